#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "roleforge/kernels.hpp"
#include "support.hpp"

using namespace roleforge;
using namespace roleforge::kernels;

namespace {

struct RandomSpace {
  std::vector<std::uint64_t> codes;
  Bitset incoherent;
  SumSpace view() const { return SumSpace{codes, &incoherent, true}; }
};

RandomSpace random_union_space(unsigned bits, std::mt19937_64& rng, double density) {
  RandomSpace s;
  const std::uint64_t n = std::uint64_t{1} << bits;
  for (std::uint64_t c = 0; c < n; ++c) s.codes.push_back(c);
  s.incoherent = Bitset(n);
  std::bernoulli_distribution coin(density);
  for (std::uint64_t c = 0; c < n; ++c)
    if (coin(rng)) s.incoherent.set(c);
  return s;
}

std::set<std::vector<std::size_t>> as_sets(const std::vector<Bitset>& v) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& b : v) out.insert(b.members());
  return out;
}

}  // namespace

TEST(Blockers, SerialEqualsParallel) {
  std::mt19937_64 rng(41);
  for (unsigned bits = 2; bits <= 8; bits += 2) {
    auto s = random_union_space(bits, rng, 0.4);
    EXPECT_EQ(blockers_serial(s.view()), blockers_parallel(s.view()));
  }
}

TEST(Blockers, AdditiveCodes) {
  // Codes 0..3 with addition; incoherent at codes 3 and 5.
  std::vector<std::uint64_t> codes{0, 1, 2, 3};
  Bitset bad(7);
  bad.set(3);
  bad.set(5);
  SumSpace sp{codes, &bad, false};
  auto rows = blockers_serial(sp);
  EXPECT_EQ(rows[0].members(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(rows[2].members(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(rows, blockers_parallel(sp));
}

TEST(MeetClosure, SerialEqualsParallelAndIsClosed) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    auto s = random_union_space(4, rng, 0.5);
    auto rows = blockers_serial(s.view());
    Bitset top(rows.size(), true);
    std::vector<Bitset> a, b;
    ASSERT_TRUE(meet_closure_serial(rows, top, 1u << 20, a));
    ASSERT_TRUE(meet_closure_parallel(rows, top, 1u << 20, b));
    EXPECT_EQ(a, b);
    auto family = as_sets(a);
    EXPECT_EQ(family.size(), a.size());
    for (const auto& x : a)
      for (const auto& y : a) EXPECT_TRUE(family.contains((x & y).members()));
    for (const auto& g : rows) EXPECT_TRUE(family.contains(g.members()));
  }
}

TEST(MeetClosure, BoundStopsEarly) {
  std::vector<Bitset> gens;
  for (std::size_t i = 0; i < 8; ++i) {
    Bitset g(8, true);
    g.reset(i);
    gens.push_back(g);
  }
  Bitset top(8, true);
  std::vector<Bitset> out;
  EXPECT_FALSE(meet_closure_serial(gens, top, 100, out));
  EXPECT_FALSE(meet_closure_parallel(gens, top, 100, out));
  EXPECT_TRUE(meet_closure_serial(gens, top, 256, out));
  EXPECT_EQ(out.size(), 256u);
}

TEST(IntersectRows, MatchesManualIntersection) {
  std::mt19937_64 rng(47);
  auto s = random_union_space(4, rng, 0.6);
  auto rows = blockers_serial(s.view());
  Bitset top(rows.size(), true);
  Bitset set(rows.size());
  set.set(1);
  set.set(6);
  EXPECT_EQ(intersect_rows(rows, set, top), rows[1] & rows[6]);
  EXPECT_EQ(intersect_rows(rows, Bitset(rows.size()), top), top);
}
