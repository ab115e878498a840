#include "roleforge/rsr.hpp"

#include <algorithm>

#include "roleforge/kernels.hpp"

namespace roleforge {

namespace {

constexpr std::uint64_t kMaxCodeSpace = std::uint64_t{1} << 26;

std::uint64_t multiset_code(const Position& p, std::uint64_t radix) {
  std::uint64_t code = 0, scale = 1;
  for (auto c : p.left) {
    code += c * scale;
    scale *= radix;
  }
  for (auto c : p.right) {
    code += c * scale;
    scale *= radix;
  }
  return code;
}

Position decode_multiset(std::uint64_t code, std::size_t atoms, std::uint64_t radix) {
  Position p = Position::empty(atoms);
  for (std::size_t x = 0; x < atoms; ++x, code /= radix)
    p.left[x] = static_cast<std::uint16_t>(code % radix);
  for (std::size_t x = 0; x < atoms; ++x, code /= radix)
    p.right[x] = static_cast<std::uint16_t>(code % radix);
  return p;
}

}  // namespace

PositionSpace::PositionSpace(Frame frame, Execution exec, std::size_t max_window)
    : frame_(std::move(frame)) {
  const std::size_t w = frame_.window_size();
  if (w > max_window)
    throw DomainError("window of " + std::to_string(w) + " positions exceeds the bound of " +
                      std::to_string(max_window));
  positions_ = enumerate_positions(frame_);
  const std::size_t n = frame_.atom_count();

  Bitset incoherent;
  if (frame_.mode() == Mode::set) {
    radix_ = 2;
    codes_.resize(w);
    for (std::size_t i = 0; i < w; ++i) codes_[i] = i;
    incoherent = Bitset(w);
    for (std::size_t i = 0; i < w; ++i)
      if (frame_.contains(positions_[i])) incoherent.set(i);
    empty_index_ = 0;
  } else {
    radix_ = 2ULL * frame_.cap() + 1;
    std::uint64_t space = 1;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      space *= radix_;
      if (space > kMaxCodeSpace) throw DomainError("multiset sum space too large; lower the cap");
    }
    incoherent = Bitset(space);
    for (std::uint64_t c = 0; c < space; ++c)
      if (frame_.contains(decode_multiset(c, n, radix_))) incoherent.set(c);
    code_to_window_.assign(space, -1);
    codes_.resize(w);
    for (std::size_t i = 0; i < w; ++i) {
      codes_[i] = multiset_code(positions_[i], radix_);
      code_to_window_[codes_[i]] = static_cast<std::int64_t>(i);
    }
    empty_index_ = 0;  // degree 0 sorts first
  }

  kernels::SumSpace ss{codes_, &incoherent, frame_.mode() == Mode::set};
  blockers_ = exec == Execution::parallel ? kernels::blockers_parallel(ss)
                                          : kernels::blockers_serial(ss);
}

std::optional<std::size_t> PositionSpace::index_of(const Position& p) const {
  if (!frame_.in_window(p)) return std::nullopt;
  if (frame_.mode() == Mode::set) return static_cast<std::size_t>(set_position_word(p));
  auto w = code_to_window_[multiset_code(p, radix_)];
  if (w < 0) return std::nullopt;
  return static_cast<std::size_t>(w);
}

std::optional<std::size_t> PositionSpace::sum_index(std::size_t i, std::size_t j) const {
  if (frame_.mode() == Mode::set) return static_cast<std::size_t>(codes_[i] | codes_[j]);
  auto w = code_to_window_[codes_[i] + codes_[j]];
  if (w < 0) return std::nullopt;
  return static_cast<std::size_t>(w);
}

PositionSet PositionSpace::make_set(std::span<const Position> ps) const {
  PositionSet s = empty_set();
  for (const auto& p : ps) {
    auto i = index_of(p);
    if (!i) throw DomainError("position " + format_position(frame_.atoms(), p) + " is outside the window");
    s.set(*i);
  }
  return s;
}

PositionSet rsr(const PositionSpace& space, const PositionSet& a) {
  return kernels::intersect_rows(space.blockers(), a, space.full_set());
}

PositionSet closure(const PositionSpace& space, const PositionSet& a) {
  return rsr(space, rsr(space, a));
}

bool is_role(const PositionSpace& space, const PositionSet& a) { return closure(space, a) == a; }

const std::vector<Bitset>& principal_blockers(const PositionSpace& space) {
  return space.blockers();
}

RoleLattice::RoleLattice(std::shared_ptr<const PositionSpace> space, std::vector<Bitset> roles)
    : space_(std::move(space)), roles_(std::move(roles)) {
  for (std::size_t i = 0; i < roles_.size(); ++i)
    if (!index_.emplace(roles_[i], static_cast<std::int32_t>(i)).second)
      throw DomainError("duplicate role in lattice");
  PositionSet meet_all = space_->full_set();
  for (const auto& r : roles_) meet_all &= r;
  top_ = id_of(space_->full_set());
  bottom_ = id_of(meet_all);
  const PositionSet dual = space_->blocker(space_->empty_index());
  dualizer_ = id_of(dual);
  unit_ = id_of(rsr(*space_, dual));
}

std::optional<RoleId> RoleLattice::find(const PositionSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return RoleId{it->second};
}

RoleId RoleLattice::id_of(const PositionSet& closed) const {
  auto r = find(closed);
  if (!r) throw DomainError("set is not a role of this lattice");
  return *r;
}

std::shared_ptr<const RoleLattice> role_lattice(std::shared_ptr<const PositionSpace> space,
                                                std::size_t bound, Execution exec) {
  const auto& gens = space->blockers();
  std::vector<Bitset> roles;
  const bool ok = exec == Execution::parallel
                      ? kernels::meet_closure_parallel(gens, space->full_set(), bound, roles)
                      : kernels::meet_closure_serial(gens, space->full_set(), bound, roles);
  if (!ok)
    throw DomainError("role lattice exceeds the bound of " + std::to_string(bound) + " roles");
  std::sort(roles.begin(), roles.end(), [](const Bitset& a, const Bitset& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca > cb;
    return canonical_less(a, b);
  });
  return std::make_shared<const RoleLattice>(std::move(space), std::move(roles));
}

std::vector<StabilityChange> cap_stability(const PositionSpace& space, unsigned wider_cap) {
  const Frame& f = space.frame();
  if (f.mode() != Mode::multiset) throw DomainError("cap stability applies to multiset frames");
  if (wider_cap <= f.cap()) throw DomainError("stability cap must exceed the frame cap");
  PositionSpace wide(f.with_cap(wider_cap), Execution::parallel,
                     std::max(PositionSpace::kDefaultMaxWindow, f.with_cap(wider_cap).window_size()));
  std::vector<std::size_t> to_wide(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) to_wide[i] = *wide.index_of(space.position(i));
  auto restrict = [&](const PositionSet& s) {
    PositionSet out = space.empty_set();
    for (std::size_t i = 0; i < space.size(); ++i)
      if (s.test(to_wide[i])) out.set(i);
    return out;
  };
  std::vector<StabilityChange> changes;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const PositionSet narrow_rsr = space.blocker(i);
    const PositionSet wide_rsr = wide.blocker(to_wide[i]);
    if (restrict(wide_rsr) != narrow_rsr) changes.push_back({space.position(i), "rsr"});
    const PositionSet narrow_cl = rsr(space, narrow_rsr);
    const PositionSet wide_cl = rsr(wide, wide_rsr);
    if (restrict(wide_cl) != narrow_cl) changes.push_back({space.position(i), "closure"});
  }
  return changes;
}

}  // namespace roleforge
