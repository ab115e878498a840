#include "roleforge/semantics.hpp"

#include <algorithm>

namespace roleforge {

std::string_view clause_set_name(ClauseSet c) { return c == ClauseSet::classical ? "classical" : "linear"; }

Model::Model(Frame frame, const ModelOptions& opt) {
  space_ = std::make_shared<const PositionSpace>(std::move(frame), opt.exec, opt.max_window);
  lattice_ = role_lattice(space_, opt.lattice_bound, opt.exec);
  ops_ = std::make_unique<QuantaleOps>(lattice_);
  const std::size_t n = space_->frame().atom_count();
  for (std::size_t x = 0; x < n; ++x) {
    Position plus = Position::empty(n), minus = Position::empty(n);
    plus.left[x] = 1;
    minus.right[x] = 1;
    atoms_.push_back({ops_->close(space_->singleton(*space_->index_of(plus))),
                      ops_->close(space_->singleton(*space_->index_of(minus)))});
  }
}

Content Model::interpret_atom(std::size_t atom) const {
  if (atom >= atoms_.size()) throw DomainError("atom index out of range");
  return atoms_[atom];
}

Content Model::interpret_atom(std::string_view name) const {
  auto x = frame().atoms().find(name);
  if (!x) throw DomainError("unknown atom '" + std::string(name) + "'");
  return atoms_[*x];
}

Content Model::eval(const FormulaPtr& f, ClauseSet clauses) const {
  auto& cache = cache_[clauses == ClauseSet::classical ? 0 : 1];
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
  }
  if (clauses == ClauseSet::classical && frame().mode() != Mode::set)
    throw DomainError("classical clauses require a set-mode frame");
  const bool allowed = clauses == ClauseSet::classical ? is_classical_connective(f->kind)
                                                       : is_linear_connective(f->kind);
  if (!allowed)
    throw DomainError("connective '" + std::string(symbol(f->kind)) + "' is not available under " +
                      std::string(clause_set_name(clauses)) + " clauses");
  Content c;
  if (f->kind == Connective::atom) {
    c = interpret_atom(f->atom);
  } else if (f->kind == Connective::neg) {
    c = eval(f->lhs, clauses).swapped();
  } else {
    c = apply(f->kind, eval(f->lhs, clauses), eval(f->rhs, clauses), clauses);
  }
  std::lock_guard lock(cache_mutex_);
  cache.emplace(f, c);
  return c;
}

Content Model::apply(Connective k, Content a, Content b, ClauseSet clauses) const {
  const bool allowed = clauses == ClauseSet::classical ? is_classical_connective(k)
                                                       : is_linear_connective(k);
  if (!allowed || k == Connective::atom)
    throw DomainError("connective '" + std::string(symbol(k)) + "' is not available under " +
                      std::string(clause_set_name(clauses)) + " clauses");
  const QuantaleOps& q = *ops_;
  switch (k) {
    case Connective::neg:
      return a.swapped();
    case Connective::and_:
      return {q.tensor(a.premisory, b.premisory), q.tilde_join(a.conclusory, b.conclusory)};
    case Connective::or_:
      return {q.tilde_join(a.premisory, b.premisory), q.tensor(a.conclusory, b.conclusory)};
    case Connective::imp:
      return {q.tilde_join(a.conclusory, b.premisory), q.tensor(a.premisory, b.conclusory)};
    case Connective::tensor:
      return {q.tensor(a.premisory, b.premisory), q.parr(a.conclusory, b.conclusory)};
    case Connective::plus:
      return {q.join(a.premisory, b.premisory), q.meet(a.conclusory, b.conclusory)};
    case Connective::parr:
      return {q.parr(a.premisory, b.premisory), q.tensor(a.conclusory, b.conclusory)};
    case Connective::with:
      return {q.meet(a.premisory, b.premisory), q.join(a.conclusory, b.conclusory)};
    default:
      throw DomainError("unexpected connective");
  }
}

RoleId Model::sequent_role(std::span<const Content> lhs, std::span<const Content> rhs) const {
  std::vector<Content> l(lhs.begin(), lhs.end()), r(rhs.begin(), rhs.end());
  if (frame().mode() == Mode::set) {
    auto dedupe = [](std::vector<Content>& v) {
      auto key = [](Content c) { return std::pair(c.premisory.value, c.conclusory.value); };
      std::sort(v.begin(), v.end(), [&](Content a, Content b) { return key(a) < key(b); });
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(l);
    dedupe(r);
  }
  std::vector<RoleId> roles;
  for (auto c : l) roles.push_back(c.premisory);
  for (auto c : r) roles.push_back(c.conclusory);
  return ops_->tensor_all(roles);
}

bool Model::entails(std::span<const Content> lhs, std::span<const Content> rhs) const {
  return ops_->leq(sequent_role(lhs, rhs), ops_->dualizer());
}

bool Model::entails(const FormulaSequent& s, ClauseSet clauses) const {
  std::vector<Content> l, r;
  for (const auto& f : s.lhs) l.push_back(eval(f, clauses));
  for (const auto& f : s.rhs) r.push_back(eval(f, clauses));
  return entails(l, r);
}

bool Model::is_reflexive_content(Content c) const {
  return ops_->leq(ops_->tensor(c.premisory, c.conclusory), ops_->dualizer());
}

bool Model::satisfies_cut_condition(Content c) const {
  return ops_->leq(ops_->neg(c.conclusory), c.premisory);
}

bool Model::satisfies_containment(Content c) const {
  if (!ops_->bottom_absorbing())
    throw DomainError("the lattice bottom is not tensor-absorbing; containment is undefined");
  return ops_->tensor(c.premisory, c.conclusory) == ops_->bottom();
}

bool Model::is_idempotent_content(Content c) const {
  return ops_->is_idempotent(c.premisory) && ops_->is_idempotent(c.conclusory);
}

// ** Raw clauses

PositionSet RawClauses::adjunction(const PositionSet& a, const PositionSet& b) const {
  PositionSet sums = space.empty_set();
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!a.test(i)) continue;
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (!b.test(j)) continue;
      if (auto k = space.sum_index(i, j)) sums.set(*k);
    }
  }
  return closure(space, sums);
}

PositionSet RawClauses::symjunction(const PositionSet& a, const PositionSet& b) const {
  return closure(space, a | b);
}

std::pair<PositionSet, PositionSet> RawClauses::tensor(const PositionSet& ap, const PositionSet& am,
                                                       const PositionSet& bp,
                                                       const PositionSet& bm) const {
  return {adjunction(ap, bp), neg(adjunction(neg(am), neg(bm)))};
}

std::pair<PositionSet, PositionSet> RawClauses::plus(const PositionSet& ap, const PositionSet& am,
                                                     const PositionSet& bp,
                                                     const PositionSet& bm) const {
  return {symjunction(ap, bp), neg(symjunction(neg(am), neg(bm)))};
}

std::pair<PositionSet, PositionSet> RawClauses::conj(const PositionSet& ap, const PositionSet& am,
                                                     const PositionSet& bp,
                                                     const PositionSet& bm) const {
  PositionSet pre = am | bm;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!am.test(i)) continue;
    for (std::size_t j = 0; j < space.size(); ++j)
      if (bm.test(j))
        if (auto k = space.sum_index(i, j)) pre.set(*k);
  }
  return {adjunction(ap, bp), closure(space, pre)};
}

// ** Explicit connectives

ExplicitConnective find_explicit_connective(const Model& m, ConnectiveKind kind) {
  const Frame& f = m.frame();
  if (f.mode() != Mode::set) throw DomainError("explicit connective search requires set mode");
  const PositionSpace& sp = m.space();
  const std::size_t n = f.atom_count();
  auto signed_blocker = [&](std::vector<std::size_t> left, std::vector<std::size_t> right) {
    Position p = Position::empty(n);
    for (auto x : left) p.left[x] = 1;
    for (auto x : right) p.right[x] = 1;
    return sp.blocker(*sp.index_of(p));
  };
  ExplicitConnective out;
  if (kind == ConnectiveKind::negation) {
    std::vector<std::size_t> dual(n);
    out.exists = true;
    for (std::size_t a = 0; a < n && out.exists; ++a) {
      bool found = false;
      for (std::size_t c = 0; c < n && !found; ++c) {
        if (signed_blocker({a}, {}) == signed_blocker({}, {c}) &&
            signed_blocker({c}, {}) == signed_blocker({}, {a})) {
          dual[a] = c;
          found = true;
        }
      }
      out.exists = found;
    }
    if (out.exists) out.negation = dual;
    return out;
  }
  out.exists = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const PositionSet target = kind == ConnectiveKind::conj
                                     ? signed_blocker({a, b}, {})
                                     : signed_blocker({a}, {}) & signed_blocker({b}, {});
      PairWitness w{a, b, std::nullopt};
      for (std::size_t c = 0; c < n && !w.c; ++c)
        if (signed_blocker({c}, {}) == target) w.c = c;
      out.exists = out.exists && w.c.has_value();
      out.pairs.push_back(w);
    }
  }
  return out;
}

}  // namespace roleforge
