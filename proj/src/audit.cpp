#include "roleforge/audit.hpp"

#include <sstream>

namespace roleforge {

SequentSpace::SequentSpace(std::vector<FormulaPtr> formulas, unsigned max_occurrences)
    : formulas_(std::move(formulas)), max_occurrences_(max_occurrences) {
  const std::uint64_t n = formulas_.size();
  std::uint64_t power = 1;
  for (unsigned k = 0; k <= max_occurrences_; ++k) {
    block_.push_back((k + 1) * power);
    total_ += block_.back();
    power *= n;
  }
}

FormulaSequent SequentSpace::at(std::uint64_t index) const {
  if (index >= total_) throw DomainError("sequent index out of range");
  unsigned k = 0;
  while (index >= block_[k]) index -= block_[k++];
  const std::uint64_t n = formulas_.size();
  std::uint64_t power = 1;
  for (unsigned i = 0; i < k; ++i) power *= n;
  const std::uint64_t split = index / power;
  std::uint64_t digits = index % power;
  FormulaSequent s;
  for (unsigned i = 0; i < k; ++i) {
    const FormulaPtr& f = formulas_[digits % n];
    digits /= n;
    (i < split ? s.lhs : s.rhs).push_back(f);
  }
  return s;
}

bool for_each_sequent(const SequentSpace& space, const AuditOptions& opt,
                      const std::function<void(const FormulaSequent&)>& visit) {
  if (space.size() <= opt.exhaustive_limit) {
    for (std::uint64_t i = 0; i < space.size(); ++i) visit(space.at(i));
    return false;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
  for (std::uint64_t i = 0; i < opt.samples; ++i) visit(space.at(pick(rng)));
  return true;
}

const std::vector<Connective>& classical_binaries() {
  static const std::vector<Connective> c{Connective::and_, Connective::or_, Connective::imp};
  return c;
}

const std::vector<Connective>& linear_binaries() {
  static const std::vector<Connective> c{Connective::tensor, Connective::plus, Connective::parr,
                                         Connective::with};
  return c;
}

AuditReport audit_conservativity(const Model& m, std::size_t max_witnesses) {
  AuditReport r;
  r.property = "conservativity";
  const Frame& f = m.frame();
  for (const auto& p : m.space().positions()) {
    std::vector<Content> lhs, rhs;
    for (std::size_t x = 0; x < f.atom_count(); ++x) {
      lhs.insert(lhs.end(), p.left[x], m.interpret_atom(x));
      rhs.insert(rhs.end(), p.right[x], m.interpret_atom(x));
    }
    ++r.checked;
    const bool incoherent = bot_member(f, p);
    if (incoherent != m.entails(lhs, rhs))
      r.violation(format_position(f.atoms(), p) + (incoherent ? " incoherent but not entailed"
                                                               : " entailed but coherent"),
                  max_witnesses);
  }
  return r;
}

AuditReport audit_supraclassical(const Model& m, const AuditOptions& opt) {
  AuditReport r;
  r.property = "supraclassical";
  SequentSpace space(enumerate_formulas(m.frame().atoms().names(), opt.depth, classical_binaries()),
                     opt.max_occurrences);
  r.sampled = for_each_sequent(space, opt, [&](const FormulaSequent& s) {
    ++r.checked;
    if (!oracles::classical_valid(s)) return;
    ++r.relevant;
    try {
      if (!m.entails(s, ClauseSet::classical))
        r.violation(to_string(s) + " classically valid but not entailed", opt.max_witnesses);
    } catch (const DomainError& e) {
      r.violation(to_string(s) + ": " + e.what(), opt.max_witnesses);
    }
  });
  return r;
}

AuditReport audit_robbins(const Model& m, unsigned depth, std::size_t max_witnesses) {
  AuditReport r;
  r.property = "robbins";
  const auto formulas = enumerate_formulas(m.frame().atoms().names(), depth, classical_binaries());
  std::vector<Content> contents;
  contents.reserve(formulas.size());
  for (const auto& f : formulas) contents.push_back(m.eval(f, ClauseSet::classical));
  const auto cl = ClauseSet::classical;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    const Content a = contents[i];
    for (std::size_t j = 0; j < formulas.size(); ++j) {
      const Content b = contents[j];
      ++r.checked;
      try {
        const Content x = m.apply(Connective::and_, m.apply(Connective::or_, a, b, cl),
                                  m.apply(Connective::or_, a, b.swapped(), cl), cl);
        const bool forward = m.entails(std::vector{x}, std::vector{a});
        const bool backward = m.entails(std::vector{a}, std::vector{x});
        if (!forward || !backward)
          r.violation("A = " + to_string(*formulas[i]) + ", B = " + to_string(*formulas[j]),
                      max_witnesses);
      } catch (const DomainError& e) {
        r.violation("A = " + to_string(*formulas[i]) + ", B = " + to_string(*formulas[j]) + ": " +
                        e.what(),
                    max_witnesses);
      }
    }
  }
  return r;
}

AuditReport audit_supralinear(const Model& m, const AuditOptions& opt,
                              const oracles::MallOptions& mall) {
  AuditReport r;
  r.property = "supralinear";
  auto formulas = enumerate_formulas(m.frame().atoms().names(), opt.depth, linear_binaries());
  auto check = [&](const FormulaSequent& s) {
    ++r.checked;
    if (connective_count(s) > mall.max_connectives) return;
    if (!oracles::mall_provable(s, mall)) return;
    ++r.relevant;
    try {
      if (!m.entails(s, ClauseSet::linear))
        r.violation(to_string(s) + " provable in MALL but not entailed", opt.max_witnesses);
    } catch (const DomainError& e) {
      r.violation(to_string(s) + ": " + e.what(), opt.max_witnesses);
    }
  };
  // Identity instances first: sampling alone rarely hits provable sequents.
  for (const auto& f : formulas) check(FormulaSequent{{f}, {f}});
  SequentSpace space(std::move(formulas), opt.max_occurrences);
  r.sampled = for_each_sequent(space, opt, check);
  return r;
}

AuditReport audit_clause_agreement(const Model& m, std::size_t max_witnesses) {
  AuditReport r;
  r.property = "clause-agreement";
  const QuantaleOps& q = m.ops();
  const RoleLattice& lat = m.lattice();
  const RawClauses raw{m.space()};
  const bool classical = m.frame().mode() == Mode::set;
  auto name = [](RoleId x) { return "r" + std::to_string(x.value); };
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const RoleId x{static_cast<std::int32_t>(i)}, y{static_cast<std::int32_t>(j)};
      const auto& rx = lat.role(x);
      const auto& ry = lat.role(y);
      ++r.checked;
      // Premisory and conclusory components are independent, so pairing a
      // role pair with itself covers every pair of contents.
      const auto [tp, tm] = raw.tensor(rx, rx, ry, ry);
      if (tp != lat.role(q.tensor(x, y)))
        r.violation("tensor premisory " + name(x) + "," + name(y), max_witnesses);
      if (tm != lat.role(q.parr(x, y)))
        r.violation("tensor conclusory " + name(x) + "," + name(y), max_witnesses);
      const auto [pp, pm] = raw.plus(rx, rx, ry, ry);
      if (pp != lat.role(q.join(x, y)))
        r.violation("plus premisory " + name(x) + "," + name(y), max_witnesses);
      if (pm != lat.role(q.meet(x, y)))
        r.violation("plus conclusory " + name(x) + "," + name(y), max_witnesses);
      if (classical && q.is_idempotent(x) && q.is_idempotent(y)) {
        ++r.relevant;
        const auto [cp, cm] = raw.conj(rx, rx, ry, ry);
        if (cp != lat.role(q.tensor(x, y)) || cm != lat.role(q.tilde_join(x, y)))
          r.violation("conjunction " + name(x) + "," + name(y), max_witnesses);
      }
    }
  }
  return r;
}

bool twisted_preserves_reflexivity(const Model& m, Content a, Content b) {
  const QuantaleOps& q = m.ops();
  const Content t{q.tensor(a.premisory, b.premisory), q.parr(a.conclusory, b.conclusory)};
  const Content p{q.join(a.premisory, b.premisory), q.meet(a.conclusory, b.conclusory)};
  return m.is_reflexive_content(t) && m.is_reflexive_content(p);
}

bool mixed_preserves_containment(const Model& m, Content a, Content b) {
  const QuantaleOps& q = m.ops();
  const Content c{q.tensor(a.premisory, b.premisory), q.tilde_join(a.conclusory, b.conclusory)};
  return m.is_idempotent_content(c) && m.satisfies_containment(c);
}

Content random_reflexive_content(const Model& m, std::mt19937_64& rng) {
  const QuantaleOps& q = m.ops();
  std::uniform_int_distribution<std::int32_t> pick(0, static_cast<std::int32_t>(q.size()) - 1);
  const RoleId c{pick(rng)};
  const RoleId bound = q.neg(c);
  std::vector<RoleId> below;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const RoleId p{static_cast<std::int32_t>(i)};
    if (q.leq(p, bound)) below.push_back(p);
  }
  std::uniform_int_distribution<std::size_t> choose(0, below.size() - 1);
  return {below[choose(rng)], c};
}

std::vector<Content> containment_contents(const Model& m) {
  const QuantaleOps& q = m.ops();
  std::vector<Content> out;
  if (!q.bottom_absorbing()) return out;
  IdempotentSubquantale idem(q);
  for (auto p : idem.elements())
    for (auto c : idem.elements())
      if (q.tensor(p, c) == q.bottom()) out.push_back({p, c});
  return out;
}

AuditReport compare_engines(const Model& m, const AuditOptions& opt, SemanticJudge judge) {
  if (m.frame().mode() != Mode::set)
    throw DomainError("compare supports the contractive variant on set-mode frames only");
  if (!judge) judge = [&m](const FormulaSequent& s) { return m.entails(s, ClauseSet::classical); };
  AuditReport r;
  r.property = "compare";
  SequentSpace space(enumerate_formulas(m.frame().atoms().names(), opt.depth, classical_binaries()),
                     opt.max_occurrences);
  r.sampled = for_each_sequent(space, opt, [&](const FormulaSequent& s) {
    ++r.checked;
    const bool syntactic = decide(m.frame(), s, Variant::contractive);
    bool semantic = false;
    try {
      semantic = judge(s);
    } catch (const DomainError& e) {
      r.violation(to_string(s) + ": " + e.what(), opt.max_witnesses);
      return;
    }
    if (syntactic != semantic)
      r.violation(to_string(s) + ": nmms " + (syntactic ? "true" : "false") + ", semantics " +
                      (semantic ? "true" : "false"),
                  opt.max_witnesses);
  });
  return r;
}

}  // namespace roleforge
