#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "roleforge/frame.hpp"
#include "roleforge/rsr.hpp"

namespace roleforge::testing {

inline std::string data_path(const std::string& name) { return std::string(ROLEFORGE_DATA_DIR) + "/" + name; }

inline Frame idempotent_example() { return load_frame(data_path("idempotent.frame")); }

inline Frame multiset_example(unsigned cap = 8) { return load_frame(data_path("multiset.frame")).with_cap(cap); }

inline Position pos(const Frame& f, const std::string& text) { return parse_position(f.atoms(), f.mode(), text); }

// Multiset position (m, n) over a single atom.
inline Position mn(unsigned m, unsigned n) {
  return Position{{static_cast<std::uint16_t>(m)}, {static_cast<std::uint16_t>(n)}};
}

inline PositionSet set_of(const PositionSpace& sp, const std::vector<Position>& ps) { return sp.make_set(ps); }

inline PositionSet set_of(const PositionSpace& sp, const Frame& f, const std::vector<std::string>& texts) {
  std::vector<Position> ps;
  for (const auto& t : texts) ps.push_back(pos(f, t));
  return sp.make_set(ps);
}

inline std::vector<std::string> atom_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

// The set-mode frame on `n` atoms whose incoherent positions are the words
// set in `mask` (bit w = position word w).
inline Frame set_frame_from_mask(std::size_t n, std::uint64_t mask, GeneratorSet gens = {}) {
  std::vector<Position> ps;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (2 * n)); ++w)
    if ((mask >> w) & 1U) ps.push_back(position_from_word(n, w));
  return Frame(AtomTable(atom_names(n)), Mode::set, 1, std::move(ps), gens);
}

// All 16 one-atom set frames.
inline std::vector<Frame> all_one_atom_frames() {
  std::vector<Frame> out;
  for (std::uint64_t mask = 0; mask < 16; ++mask) out.push_back(set_frame_from_mask(1, mask));
  return out;
}

inline Frame random_set_frame(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::uint64_t mask = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (2 * n)); ++w)
    if (coin(rng)) mask |= std::uint64_t{1} << w;
  return set_frame_from_mask(n, mask);
}

inline bool overlaps(const Position& p) {
  for (std::size_t x = 0; x < p.atoms(); ++x)
    if (p.left[x] && p.right[x]) return true;
  return false;
}

// Containment frames: every overlapping position plus a random selection of
// the others, listed explicitly.
inline Frame random_containment_frame(std::size_t n, std::mt19937_64& rng, double density = 0.3) {
  std::bernoulli_distribution coin(density);
  std::uint64_t mask = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (2 * n)); ++w)
    if (overlaps(position_from_word(n, w)) || coin(rng)) mask |= std::uint64_t{1} << w;
  return set_frame_from_mask(n, mask);
}

inline std::vector<Frame> all_one_atom_containment_frames() {
  std::vector<Frame> out;
  for (auto& f : all_one_atom_frames())
    if (is_containment(f)) out.push_back(f);
  return out;
}

// Reflexive frames: every (x, x) plus a random selection of other positions.
inline Frame random_reflexive_frame(std::size_t n, std::mt19937_64& rng, double density = 0.4) {
  std::bernoulli_distribution coin(density);
  std::uint64_t mask = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (2 * n)); ++w) {
    const Position p = position_from_word(n, w);
    bool identity = p.degree() == 2 && overlaps(p);
    if (identity || coin(rng)) mask |= std::uint64_t{1} << w;
  }
  return set_frame_from_mask(n, mask);
}

// Words over atoms a, b: bit 0 a+, bit 1 b+, bit 2 a-, bit 3 b-.
inline PositionSet words(const PositionSpace& sp, std::initializer_list<unsigned> ws, bool complement = false) {
  PositionSet s = complement ? sp.full_set() : sp.empty_set();
  for (unsigned w : ws) s.set(*sp.index_of(position_from_word(2, w)), !complement);
  return s;
}

// The named roles of the two-atom example, written out position by position.
// Y is bot_B without the empty position.
struct NamedA {
  PositionSet top, bot_B, X_b, X_pm, X_mp, X_bot, Y;
  explicit NamedA(const PositionSpace& sp)
      : top(sp.full_set()),
        bot_B(words(sp, {0, 4, 12, 5, 13, 10, 14, 3, 7, 11, 15})),
        X_b(words(sp, {2, 6}, true)),
        X_pm(words(sp, {0, 1, 8, 9}, true)),
        X_mp(words(sp, {0, 4, 2, 6}, true)),
        X_bot(X_pm & X_mp),
        Y(bot_B & words(sp, {0}, true)) {}

  // Table order: X_b, X_bot, bot_B, X_pm, X_mp, top, Y.
  std::vector<PositionSet> ordered() const { return {X_b, X_bot, bot_B, X_pm, X_mp, top, Y}; }
};

}  // namespace roleforge::testing

namespace roleforge {

inline void PrintTo(const Bitset& b, std::ostream* os) {
  *os << "{";
  bool first = true;
  b.for_each([&](std::size_t i) {
    *os << (first ? "" : ",") << i;
    first = false;
  });
  *os << "}";
}

}  // namespace roleforge
