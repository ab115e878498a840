#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "roleforge/error.hpp"

namespace roleforge {

inline constexpr std::size_t kMaxSetAtoms = 16;

class AtomTable {
 public:
  AtomTable() = default;
  // Throws DomainError on duplicate or malformed identifiers.
  explicit AtomTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.names_ == b.names_; }

  static bool valid_identifier(std::string_view s);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A candidate implication (left |- right), each side a multiset of atoms
// given as per-atom counts. In set mode every count is 0 or 1.
struct Position {
  std::vector<std::uint16_t> left;
  std::vector<std::uint16_t> right;

  static Position empty(std::size_t atoms) {
    return Position{std::vector<std::uint16_t>(atoms, 0), std::vector<std::uint16_t>(atoms, 0)};
  }
  std::size_t atoms() const { return left.size(); }
  unsigned degree() const;
  unsigned max_count() const;
  bool is_empty() const { return degree() == 0; }

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;
};

enum class Mode { set, multiset };

enum class Generator : unsigned { diagonal = 1, containment = 2, reflexivity = 4 };

class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::initializer_list<Generator> gens) {
    for (auto g : gens) insert(g);
  }
  void insert(Generator g) { bits_ |= static_cast<unsigned>(g); }
  bool contains(Generator g) const { return (bits_ & static_cast<unsigned>(g)) != 0; }
  bool empty() const { return bits_ == 0; }
  friend bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  unsigned bits_ = 0;
};

std::string_view generator_name(Generator g);
std::optional<Generator> parse_generator(std::string_view name);

// An atom set with its incoherence relation. Immutable after construction.
class Frame {
 public:
  Frame(AtomTable atoms, Mode mode, unsigned cap, std::vector<Position> explicit_positions,
        GeneratorSet generators);

  const AtomTable& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  Mode mode() const { return mode_; }
  // Degree cap per atom and side; 1 in set mode.
  unsigned cap() const { return cap_; }
  const std::set<Position>& explicit_positions() const { return explicit_; }
  GeneratorSet generators() const { return generators_; }

  // Membership in the incoherence relation for any well-shaped position,
  // without the encodability check of bot_member.
  bool contains(const Position& p) const;

  // Counts within 2*cap (multiset) or 0/1 (set).
  bool encodable(const Position& p) const;
  // Counts within cap: the enumerable window.
  bool in_window(const Position& p) const;
  std::size_t window_size() const;

  // Same atoms and relation with a different degree cap (multiset only).
  Frame with_cap(unsigned cap) const;

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  AtomTable atoms_;
  Mode mode_;
  unsigned cap_;
  std::set<Position> explicit_;
  GeneratorSet generators_;
};

// Frame-file text <-> Frame.
Frame parse_frame(std::string_view text);
std::string serialize_frame(const Frame& f);
Frame load_frame(const std::string& path);

// Position syntax "a, b |- c" against an atom table.
Position parse_position(const AtomTable& atoms, Mode mode, std::string_view text);
std::string format_position(const AtomTable& atoms, const Position& p);
// Compact signed rendering used in tables: a+b+a- ; "0" for the empty position.
std::string format_signed(const AtomTable& atoms, const Position& p);

bool bot_member(const Frame& f, const Position& p);
Position position_sum(const Frame& f, const Position& p, const Position& q);
std::vector<Position> enumerate_positions(const Frame& f);

// Canonical position order: bit-word order in set mode, degree then
// lexicographic in multiset mode.
bool canonical_position_less(Mode mode, const Position& a, const Position& b);
std::uint64_t set_position_word(const Position& p);
Position position_from_word(std::size_t atoms, std::uint64_t word);

template <class W>
struct Verdict {
  bool holds = true;
  std::optional<W> witness;
  explicit operator bool() const { return holds; }
};

Verdict<std::size_t> is_reflexive(const Frame& f);
Verdict<Position> is_containment(const Frame& f);

class FrameMorphism {
 public:
  // `map[i]` is the target atom of source atom i.
  FrameMorphism(const Frame& source, const Frame& target, std::vector<std::size_t> map);

  const Frame& source() const { return source_; }
  const Frame& target() const { return target_; }
  const std::vector<std::size_t>& map() const { return map_; }

  Position apply(const Position& p) const;

 private:
  Frame source_;
  Frame target_;
  std::vector<std::size_t> map_;
};

// Parses "a=b, b=a" (every source atom must be mapped).
FrameMorphism parse_morphism(const Frame& source, const Frame& target, std::string_view text);

struct MorphismWitness {
  Position source_position;
  std::optional<Position> target_position;
  std::string reason;
};

Verdict<MorphismWitness> check_conservative(const FrameMorphism& m);
Verdict<MorphismWitness> check_bot_preserving(const FrameMorphism& m);
// Preimages of target facts y^bot are closed in the source.
Verdict<MorphismWitness> check_continuity_closed_preimages(const FrameMorphism& m);
// Bot preservation and continuity together. In multiset mode the verdict is
// relative to the windows and requires equal caps.
Verdict<MorphismWitness> check_continuous(const FrameMorphism& m);

}  // namespace roleforge
