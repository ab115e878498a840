#include <random>

#include "gtest/gtest.h"
#include "roleforge/audit.hpp"
#include "roleforge/semantics.hpp"
#include "support.hpp"

using namespace roleforge;
using namespace roleforge::testing;

namespace {

struct IdempotentModel {
  Model m{idempotent_example()};
  NamedA r{m.space()};
  RoleId id(const PositionSet& s) const { return *m.lattice().find(s); }
};

bool entails(const Model& m, const std::string& text, ClauseSet c = ClauseSet::classical) {
  return m.entails(parse_sequent(text), c);
}

}  // namespace

TEST(IdempotentExample, AtomContents) {
  IdempotentModel a;
  EXPECT_EQ(a.m.interpret_atom("a"), (Content{a.id(a.r.X_mp), a.id(a.r.Y)}));
  EXPECT_EQ(a.m.interpret_atom("b"), (Content{a.id(a.r.X_pm), a.id(a.r.X_mp)}));
  EXPECT_EQ(a.m.interpret_atom(1), a.m.interpret_atom("b"));
  EXPECT_THROW(a.m.interpret_atom("c"), DomainError);
  EXPECT_THROW(a.m.interpret_atom(2), DomainError);
}

TEST(IdempotentExample, Verdicts) {
  IdempotentModel a;
  EXPECT_TRUE(entails(a.m, "|- a"));
  EXPECT_TRUE(entails(a.m, "a |- a, b"));
  EXPECT_FALSE(entails(a.m, "b |- a"));
  EXPECT_FALSE(entails(a.m, "|- b"));
  EXPECT_TRUE(entails(a.m, "a, b |- a /\\ b"));
  EXPECT_TRUE(entails(a.m, "|- a, b, ~a"));
  // The unit is bot_B itself, so the empty sequent holds.
  EXPECT_TRUE(entails(a.m, ""));
}

TEST(IdempotentExample, CompoundContents) {
  IdempotentModel a;
  const Content ab = a.m.eval(parse_formula("a /\\ b"), ClauseSet::classical);
  EXPECT_EQ(ab.premisory, a.id(a.r.X_bot));
  EXPECT_EQ(ab.conclusory, a.id(a.r.X_b));
  EXPECT_EQ(a.m.eval(parse_formula("~a"), ClauseSet::classical), a.m.interpret_atom("a").swapped());
  // Set mode reads each side as a set, so repeats change nothing.
  EXPECT_EQ(entails(a.m, "a, a |- a, b, b"), entails(a.m, "a |- a, b"));
}

TEST(IdempotentExample, ContentPredicates) {
  IdempotentModel a;
  const Content ca = a.m.interpret_atom("a");
  EXPECT_TRUE(a.m.is_reflexive_content(ca));
  EXPECT_FALSE(a.m.satisfies_cut_condition(ca));
  EXPECT_TRUE(a.m.satisfies_containment(ca));
  EXPECT_TRUE(a.m.is_idempotent_content(ca));
  const RoleId top = a.m.ops().top();
  EXPECT_FALSE(a.m.is_reflexive_content({top, top}));
}

TEST(MultisetExample, Contents) {
  Model m(multiset_example(8));
  const auto& sp = m.space();
  auto one = [&](unsigned x, unsigned y) { return *m.lattice().find(sp.singleton(*sp.index_of(mn(x, y)))); };
  const Content p = m.interpret_atom("p");
  EXPECT_EQ(p, (Content{one(1, 0), one(0, 1)}));
  const Content lolli = m.eval(parse_formula("~p | p"), ClauseSet::linear);
  EXPECT_TRUE(m.lattice().role(lolli.premisory).none());
  EXPECT_EQ(m.lattice().role(lolli.conclusory), sp.make_set(std::vector{mn(0, 0), mn(1, 1)}));
}

TEST(MultisetExample, Verdicts) {
  Model m(multiset_example(8));
  const auto lin = ClauseSet::linear;
  EXPECT_TRUE(entails(m, "|- p", lin));
  EXPECT_TRUE(entails(m, "p |- p, p", lin));
  EXPECT_FALSE(entails(m, "|- p, p", lin));
  EXPECT_FALSE(entails(m, "p, p |- p", lin));
  EXPECT_TRUE(entails(m, "p, ~p | p |- p", lin));
  EXPECT_THROW(entails(m, "p |- p"), DomainError);
}

TEST(Eval, RejectsMixedAndForeignConnectives) {
  Model m(idempotent_example());
  EXPECT_THROW(m.eval(parse_formula("a * b"), ClauseSet::classical), DomainError);
  EXPECT_THROW(m.eval(parse_formula("a /\\ b"), ClauseSet::linear), DomainError);
  EXPECT_THROW(m.eval(parse_formula("(a * b) /\\ a"), ClauseSet::classical), DomainError);
  EXPECT_THROW(m.eval(parse_formula("z"), ClauseSet::linear), DomainError);
  EXPECT_NO_THROW(m.eval(parse_formula("~(a * b) & a"), ClauseSet::linear));
}

TEST(Eval, DeMorganDefinitions) {
  std::mt19937_64 rng(67);
  auto fs = enumerate_formulas({"a", "b"}, 1, {});
  for (int t = 0; t < 8; ++t) {
    Model m(t == 0 ? idempotent_example() : random_set_frame(2, rng));
    auto lin = ClauseSet::linear;
    for (const auto& x : fs)
      for (const auto& y : fs) {
        auto nx = make_neg(x), ny = make_neg(y);
        EXPECT_EQ(m.eval(make_binary(Connective::parr, x, y), lin),
                  m.eval(make_neg(make_binary(Connective::tensor, nx, ny)), lin));
        EXPECT_EQ(m.eval(make_binary(Connective::with, x, y), lin),
                  m.eval(make_neg(make_binary(Connective::plus, nx, ny)), lin));
      }
  }
  for (int t = 0; t < 8; ++t) {
    Model m(t == 0 ? idempotent_example() : random_containment_frame(2, rng));
    if (!is_join_idempotent(m.ops())) continue;
    auto cl = ClauseSet::classical;
    for (const auto& x : fs)
      for (const auto& y : fs) {
        auto nx = make_neg(x), ny = make_neg(y);
        EXPECT_EQ(m.eval(make_binary(Connective::or_, x, y), cl),
                  m.eval(make_neg(make_binary(Connective::and_, nx, ny)), cl));
        EXPECT_EQ(m.eval(make_binary(Connective::imp, x, y), cl),
                  m.eval(make_binary(Connective::or_, nx, y), cl));
      }
  }
}

TEST(Eval, CacheIsStructural) {
  Model m(idempotent_example());
  const Content first = m.eval(parse_formula("a -> b"), ClauseSet::classical);
  EXPECT_EQ(m.eval(parse_formula("a->b"), ClauseSet::classical), first);
  EXPECT_EQ(m.eval(parse_formula("a | b"), ClauseSet::linear),
            m.eval(make_binary(Connective::parr, make_atom("a"), make_atom("b")), ClauseSet::linear));
}

TEST(Conservativity, AtomicSequentsMatchTheFrame) {
  EXPECT_EQ(audit_conservativity(Model(idempotent_example())).violations, 0u);
  EXPECT_EQ(audit_conservativity(Model(multiset_example(6))).violations, 0u);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 10; ++t) {
    auto r = audit_conservativity(Model(random_set_frame(2, rng)));
    EXPECT_EQ(r.checked, 16u);
    EXPECT_TRUE(r.ok()) << r.witnesses.front();
  }
}

TEST(ClauseAgreement, RawSetExpressions) {
  auto r = audit_clause_agreement(Model(idempotent_example()));
  EXPECT_EQ(r.checked, 49u);
  EXPECT_EQ(r.relevant, 49u);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(audit_clause_agreement(Model(multiset_example(3))).ok());
}

TEST(ExplicitConnective, NoNegationInIdempotentExample) {
  Model m(idempotent_example());
  EXPECT_FALSE(find_explicit_connective(m, ConnectiveKind::negation).exists);
  auto conj = find_explicit_connective(m, ConnectiveKind::conj);
  EXPECT_FALSE(conj.exists);
  ASSERT_EQ(conj.pairs.size(), 3u);
  EXPECT_EQ(conj.pairs[0].c, 0u);
  EXPECT_FALSE(conj.pairs[1].c.has_value());
}

TEST(ExplicitConnective, DualPairAndConjunctionAtom) {
  // Incoherent iff (a left or b right) and (b left or a right): b acts as ~a.
  std::uint64_t mask = 0;
  for (std::uint64_t w = 0; w < 16; ++w) {
    Position p = position_from_word(2, w);
    if ((p.left[0] || p.right[1]) && (p.left[1] || p.right[0])) mask |= std::uint64_t{1} << w;
  }
  Model neg(set_frame_from_mask(2, mask));
  auto n = find_explicit_connective(neg, ConnectiveKind::negation);
  ASSERT_TRUE(n.exists);
  EXPECT_EQ(*n.negation, (std::vector<std::size_t>{1, 0}));

  // Incoherent iff c is a premise or both a and b are: c acts as a /\ b.
  mask = 0;
  for (std::uint64_t w = 0; w < 64; ++w) {
    Position p = position_from_word(3, w);
    if (p.left[2] || (p.left[0] && p.left[1])) mask |= std::uint64_t{1} << w;
  }
  Model conj(set_frame_from_mask(3, mask));
  auto c = find_explicit_connective(conj, ConnectiveKind::conj);
  EXPECT_TRUE(c.exists);
  for (const auto& w : c.pairs)
    if (w.a == 0 && w.b == 1) EXPECT_EQ(w.c, 2u);
  EXPECT_THROW(find_explicit_connective(Model(multiset_example(3)), ConnectiveKind::conj), DomainError);
}
