#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "roleforge/formula.hpp"
#include "roleforge/quantale.hpp"

namespace roleforge {

enum class ClauseSet { classical, linear };

std::string_view clause_set_name(ClauseSet c);

// A conceptual content: premisory and conclusory roles.
struct Content {
  RoleId premisory;
  RoleId conclusory;

  Content swapped() const { return {conclusory, premisory}; }
  friend bool operator==(Content, Content) = default;
};

struct ModelOptions {
  Execution exec = Execution::parallel;
  std::size_t max_window = PositionSpace::kDefaultMaxWindow;
  std::size_t lattice_bound = RoleLattice::kDefaultBound;
};

// A frame with its position space, role lattice and quantale operations,
// plus a per-subformula content cache.
class Model {
 public:
  explicit Model(Frame frame, const ModelOptions& opt = {});

  const Frame& frame() const { return space_->frame(); }
  const PositionSpace& space() const { return *space_; }
  const RoleLattice& lattice() const { return *lattice_; }
  const QuantaleOps& ops() const { return *ops_; }
  bool window_relative() const { return space_->window_relative(); }

  // The two singleton-position closures of an atom.
  Content interpret_atom(std::size_t atom) const;
  Content interpret_atom(std::string_view name) const;

  // Throws DomainError on mixed or mismatched connectives, unknown atoms,
  // classical clauses outside set mode, and tilde joins of non-idempotent
  // roles.
  Content eval(const FormulaPtr& f, ClauseSet clauses) const;
  // One clause applied to already evaluated arguments; `b` is ignored for
  // negation.
  Content apply(Connective c, Content a, Content b, ClauseSet clauses) const;

  // The tensor of every lhs premisory role and rhs conclusory role. In set
  // mode each side is read as a set of contents.
  RoleId sequent_role(std::span<const Content> lhs, std::span<const Content> rhs) const;
  bool entails(std::span<const Content> lhs, std::span<const Content> rhs) const;
  bool entails(const FormulaSequent& s, ClauseSet clauses) const;

  bool is_reflexive_content(Content c) const;
  bool satisfies_cut_condition(Content c) const;
  // premisory * conclusory equals the lattice bottom; throws if the bottom
  // is not tensor-absorbing.
  bool satisfies_containment(Content c) const;
  bool is_idempotent_content(Content c) const;

 private:
  std::shared_ptr<const PositionSpace> space_;
  std::shared_ptr<const RoleLattice> lattice_;
  std::unique_ptr<QuantaleOps> ops_;
  std::vector<Content> atoms_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<FormulaPtr, Content, FormulaHash, FormulaEq> cache_[2];
};

// Clause values computed straight from the defining set expressions on raw
// position sets, bypassing the memoized quantale tables. Used to cross-check
// the quantale route.
struct RawClauses {
  const PositionSpace& space;

  PositionSet adjunction(const PositionSet& a, const PositionSet& b) const;    // closure of sums
  PositionSet symjunction(const PositionSet& a, const PositionSet& b) const;   // closure of union
  PositionSet neg(const PositionSet& a) const { return rsr(space, a); }

  // <a+ adj b+, (a-^bot adj b-^bot)^bot>
  std::pair<PositionSet, PositionSet> tensor(const PositionSet& ap, const PositionSet& am,
                                             const PositionSet& bp, const PositionSet& bm) const;
  // <a+ sym b+, (a-^bot sym b-^bot)^bot>
  std::pair<PositionSet, PositionSet> plus(const PositionSet& ap, const PositionSet& am,
                                           const PositionSet& bp, const PositionSet& bm) const;
  // <a+ adj b+, closure(a- u b- u sums(a-, b-))>
  std::pair<PositionSet, PositionSet> conj(const PositionSet& ap, const PositionSet& am,
                                           const PositionSet& bp, const PositionSet& bm) const;
};

enum class ConnectiveKind { negation, conj, disj };

struct PairWitness {
  std::size_t a;
  std::size_t b;
  std::optional<std::size_t> c;
};

struct ExplicitConnective {
  bool exists = false;
  std::optional<std::vector<std::size_t>> negation;  // negation: atom -> dual atom
  std::vector<PairWitness> pairs;                    // conj / disj: one entry per pair a <= b
};

// Searches for atoms that make a connective explicit in a set-mode frame.
ExplicitConnective find_explicit_connective(const Model& m, ConnectiveKind kind);

}  // namespace roleforge
