#pragma once

// Property suites over one model: conservativity of the atom interpretation,
// supraclassicality, supralinearity, clause agreement, preservation lemmas and
// the NMMS-versus-semantics comparison.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "roleforge/nmms.hpp"
#include "roleforge/oracles.hpp"
#include "roleforge/semantics.hpp"

namespace roleforge {

// Sequents with at most `max_occurrences` formula occurrences drawn from a
// fixed formula list, indexed densely: first by occurrence count, then by
// the split point between the sides, then by the formulas in order.
class SequentSpace {
 public:
  SequentSpace(std::vector<FormulaPtr> formulas, unsigned max_occurrences);

  std::uint64_t size() const { return total_; }
  FormulaSequent at(std::uint64_t index) const;
  const std::vector<FormulaPtr>& formulas() const { return formulas_; }

 private:
  std::vector<FormulaPtr> formulas_;
  unsigned max_occurrences_;
  std::vector<std::uint64_t> block_;  // sequents with exactly k occurrences
  std::uint64_t total_ = 0;
};

struct AuditOptions {
  unsigned depth = 2;
  unsigned max_occurrences = 3;
  std::uint64_t exhaustive_limit = 100'000;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 1;
  std::size_t max_witnesses = 5;
};

struct AuditReport {
  std::string property;
  std::uint64_t checked = 0;
  std::uint64_t relevant = 0;  // cases where the hypothesis held
  std::uint64_t violations = 0;
  bool sampled = false;
  std::vector<std::string> witnesses;

  bool ok() const { return violations == 0; }
  void violation(std::string w, std::size_t max_witnesses) {
    ++violations;
    if (witnesses.size() < max_witnesses) witnesses.push_back(std::move(w));
  }
};

// Calls `visit` on every sequent of the space, or on `samples` seeded draws
// when the space exceeds `exhaustive_limit`. Returns whether it sampled.
bool for_each_sequent(const SequentSpace& space, const AuditOptions& opt,
                      const std::function<void(const FormulaSequent&)>& visit);

const std::vector<Connective>& classical_binaries();  // /\ \/ ->
const std::vector<Connective>& linear_binaries();     // * + | &

// Every window position: incoherence iff the interpreted atoms entail.
AuditReport audit_conservativity(const Model& m, std::size_t max_witnesses = 5);

// classical_valid implies entails under classical clauses.
AuditReport audit_supraclassical(const Model& m, const AuditOptions& opt);

// (A \/ B) /\ (A \/ ~B) and A entail each other for all formulas A, B of
// depth at most `depth`.
AuditReport audit_robbins(const Model& m, unsigned depth, std::size_t max_witnesses = 5);

// mall_provable implies entails under linear clauses.
AuditReport audit_supralinear(const Model& m, const AuditOptions& opt,
                              const oracles::MallOptions& mall = {});

// Clauses computed on raw position sets agree with the quantale clauses on
// every pair of roles: tensor and plus always, the classical conjunction on
// idempotent pairs.
AuditReport audit_clause_agreement(const Model& m, std::size_t max_witnesses = 5);

// <a+ * b+, a- | b-> and <a+ v b+, a- ^ b-> of two reflexive contents are
// reflexive.
bool twisted_preserves_reflexivity(const Model& m, Content a, Content b);
// <a+ * b+, a- ~v b-> of two idempotent containment-satisfying contents is
// again idempotent and containment-satisfying.
bool mixed_preserves_containment(const Model& m, Content a, Content b);

// A uniform role c and a uniform role below c^bot, as <p, c>.
Content random_reflexive_content(const Model& m, std::mt19937_64& rng);
// Every content with idempotent roles whose tensor is the lattice bottom.
std::vector<Content> containment_contents(const Model& m);

using SemanticJudge = std::function<bool(const FormulaSequent&)>;

// NMMS decide against semantic entailment on the sequents of classical
// formulas up to `opt.depth`. Only the contractive variant with classical
// clauses is supported. `judge` replaces the semantic side when set.
AuditReport compare_engines(const Model& m, const AuditOptions& opt, SemanticJudge judge = {});

}  // namespace roleforge
