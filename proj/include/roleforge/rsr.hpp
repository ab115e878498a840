#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "roleforge/bitset.hpp"
#include "roleforge/frame.hpp"

namespace roleforge {

// A set of window positions, as a bit vector over window indices.
using PositionSet = Bitset;

enum class Execution { serial, parallel };

// The enumerable window of a frame together with the precomputed principal
// blocker sets p^bot of every window position. In set mode the window is the
// whole position space and a window index is the position's bit word; in
// multiset mode the window is every position with counts <= cap, in canonical
// order, and sums are tracked up to 2*cap.
class PositionSpace {
 public:
  static constexpr std::size_t kDefaultMaxWindow = std::size_t{1} << 14;

  explicit PositionSpace(Frame frame, Execution exec = Execution::parallel,
                         std::size_t max_window = kDefaultMaxWindow);

  const Frame& frame() const { return frame_; }
  std::size_t size() const { return positions_.size(); }
  const Position& position(std::size_t i) const { return positions_[i]; }
  const std::vector<Position>& positions() const { return positions_; }
  std::optional<std::size_t> index_of(const Position& p) const;
  std::size_t empty_index() const { return empty_index_; }
  // Window index of p_i + p_j, or nullopt if the sum leaves the window.
  std::optional<std::size_t> sum_index(std::size_t i, std::size_t j) const;
  bool window_relative() const { return frame_.mode() == Mode::multiset; }

  // Whether p_i + p_j is incoherent.
  bool incoherent_sum(std::size_t i, std::size_t j) const { return blockers_[i].test(j); }
  // Whether window position i itself is incoherent.
  bool incoherent(std::size_t i) const { return blockers_[empty_index_].test(i); }

  const std::vector<Bitset>& blockers() const { return blockers_; }
  const PositionSet& blocker(std::size_t i) const { return blockers_[i]; }

  PositionSet empty_set() const { return PositionSet(size()); }
  PositionSet full_set() const { return PositionSet(size(), true); }
  PositionSet singleton(std::size_t i) const {
    PositionSet s(size());
    s.set(i);
    return s;
  }
  PositionSet make_set(std::span<const Position> ps) const;

 private:
  Frame frame_;
  std::vector<Position> positions_;
  std::vector<std::uint64_t> codes_;  // code of each window position
  std::vector<std::int64_t> code_to_window_;  // multiset: code -> window index or -1
  std::uint64_t radix_ = 2;
  std::size_t empty_index_ = 0;
  std::vector<Bitset> blockers_;
};

// Range of subjunctive robustness: positions p of the window with a + p
// incoherent for every a in `a`. The empty set yields the full window.
PositionSet rsr(const PositionSpace& space, const PositionSet& a);
// rsr(rsr(a)).
PositionSet closure(const PositionSpace& space, const PositionSet& a);
bool is_role(const PositionSpace& space, const PositionSet& a);
const std::vector<Bitset>& principal_blockers(const PositionSpace& space);

struct RoleId {
  std::int32_t value = -1;
  friend auto operator<=>(RoleId, RoleId) = default;
  std::size_t index() const { return static_cast<std::size_t>(value); }
  bool valid() const { return value >= 0; }
};

// All roles of a frame: the fixpoints of closure, obtained as the
// intersection-closure of the principal blockers and the full window.
class RoleLattice {
 public:
  static constexpr std::size_t kDefaultBound = std::size_t{1} << 20;

  RoleLattice(std::shared_ptr<const PositionSpace> space, std::vector<Bitset> roles);

  const PositionSpace& space() const { return *space_; }
  std::shared_ptr<const PositionSpace> space_ptr() const { return space_; }
  std::size_t size() const { return roles_.size(); }
  const PositionSet& role(RoleId r) const { return roles_[r.index()]; }
  const std::vector<Bitset>& roles() const { return roles_; }
  std::optional<RoleId> find(const PositionSet& s) const;
  // Id of a set already known to be closed; throws if it is not in the lattice.
  RoleId id_of(const PositionSet& closed) const;

  RoleId top() const { return top_; }
  RoleId bottom() const { return bottom_; }
  // closure({empty position}) and its rsr, the dualizing role.
  RoleId unit() const { return unit_; }
  RoleId dualizer() const { return dualizer_; }

  bool leq(RoleId a, RoleId b) const { return role(a).is_subset_of(role(b)); }

 private:
  std::shared_ptr<const PositionSpace> space_;
  std::vector<Bitset> roles_;
  std::unordered_map<Bitset, std::int32_t, BitsetHash> index_;
  RoleId top_, bottom_, unit_, dualizer_;
};

// Sorted by descending cardinality, then canonical set order. Throws
// DomainError when more than `bound` roles arise.
std::shared_ptr<const RoleLattice> role_lattice(std::shared_ptr<const PositionSpace> space,
                                                std::size_t bound = RoleLattice::kDefaultBound,
                                                Execution exec = Execution::parallel);

struct StabilityChange {
  Position position;
  std::string what;  // "closure" or "rsr"
};

// Recomputes p^bot and p^botbot of every window position at `wider_cap` and
// reports positions whose sets, restricted to the original window, differ.
std::vector<StabilityChange> cap_stability(const PositionSpace& space, unsigned wider_cap);

}  // namespace roleforge
