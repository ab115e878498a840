#include "roleforge/nmms.hpp"

#include <algorithm>
#include <sstream>

namespace roleforge {

std::string_view variant_name(Variant v) {
  return v == Variant::contractive ? "contractive" : "noncontractive";
}

Target leftmost_outermost(const FormulaSequent& s) {
  for (std::size_t i = 0; i < s.lhs.size(); ++i)
    if (s.lhs[i]->kind != Connective::atom) return {false, i};
  for (std::size_t i = 0; i < s.rhs.size(); ++i)
    if (s.rhs[i]->kind != Connective::atom) return {true, i};
  throw DomainError("sequent is atomic");
}

namespace {

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case Connective::atom:
      return f;
    case Connective::neg:
      return make_neg(desugar(f->lhs));
    case Connective::and_:
    case Connective::or_:
      return make_binary(f->kind, desugar(f->lhs), desugar(f->rhs));
    case Connective::imp:
      return make_binary(Connective::or_, make_neg(desugar(f->lhs)), desugar(f->rhs));
    default:
      throw DomainError("connective '" + std::string(symbol(f->kind)) +
                        "' has no NMMS rule; use ~ /\\ \\/ ->");
  }
}

void canonicalize(std::vector<FormulaPtr>& side) {
  std::vector<FormulaPtr> out;
  for (auto& f : side)
    if (std::none_of(out.begin(), out.end(), [&](const FormulaPtr& g) { return equal(*f, *g); }))
      out.push_back(f);
  side = std::move(out);
}

class Unfolder {
 public:
  Unfolder(const Frame& f, Variant v, const ReductionPolicy& policy)
      : frame_(f), variant_(v), policy_(policy) {
    if (v == Variant::contractive && f.mode() != Mode::set)
      throw DomainError("the contractive variant requires a set-mode frame");
    if (v == Variant::noncontractive && f.mode() != Mode::multiset)
      throw DomainError("the non-contractive variant requires a multiset-mode frame");
  }

  FormulaSequent prepare(const FormulaSequent& s) const {
    FormulaSequent out;
    for (const auto& f : s.lhs) out.lhs.push_back(desugar(f));
    for (const auto& f : s.rhs) out.rhs.push_back(desugar(f));
    check_atoms(out);
    normalize(out);
    return out;
  }

  // Returns the verdict; fills `node` when non-null.
  bool run(FormulaSequent s, TraceNode* node) const {
    normalize(s);
    const bool atomic = std::all_of(s.lhs.begin(), s.lhs.end(), is_atom) &&
                        std::all_of(s.rhs.begin(), s.rhs.end(), is_atom);
    if (atomic) {
      const bool v = frame_.contains(to_position(s));
      if (node) *node = TraceNode{std::move(s), "axiom", v, {}};
      return v;
    }
    const Target t = policy_(s);
    auto& side = t.rhs ? s.rhs : s.lhs;
    if (t.index >= side.size() || is_atom(side[t.index]))
      throw DomainError("reduction policy chose an atomic or missing formula");
    const FormulaPtr target = side[t.index];
    std::vector<FormulaSequent> premises;
    std::string rule;
    auto without = [&] {
      FormulaSequent r = s;
      auto& sd = t.rhs ? r.rhs : r.lhs;
      sd.erase(sd.begin() + static_cast<std::ptrdiff_t>(t.index));
      return r;
    };
    auto at_target = [&](FormulaSequent r, bool rhs, std::vector<FormulaPtr> fs) {
      auto& sd = rhs ? r.rhs : r.lhs;
      const std::size_t where = rhs == t.rhs ? t.index : 0;
      sd.insert(sd.begin() + static_cast<std::ptrdiff_t>(where), fs.begin(), fs.end());
      return r;
    };
    const bool contractive = variant_ == Variant::contractive;
    switch (target->kind) {
      case Connective::neg:
        rule = t.rhs ? "~R" : "~L";
        premises.push_back(at_target(without(), !t.rhs, {target->lhs}));
        break;
      case Connective::and_:
        if (!t.rhs) {
          rule = "/\\L";
          premises.push_back(at_target(without(), false, {target->lhs, target->rhs}));
        } else {
          rule = contractive ? "/\\R^c" : "/\\R";
          premises.push_back(at_target(without(), true, {target->lhs}));
          premises.push_back(at_target(without(), true, {target->rhs}));
          if (contractive) premises.push_back(at_target(without(), true, {target->lhs, target->rhs}));
        }
        break;
      case Connective::or_:
        if (t.rhs) {
          rule = "\\/R";
          premises.push_back(at_target(without(), true, {target->lhs, target->rhs}));
        } else {
          rule = contractive ? "\\/L^c" : "\\/L";
          premises.push_back(at_target(without(), false, {target->lhs}));
          premises.push_back(at_target(without(), false, {target->rhs}));
          if (contractive) premises.push_back(at_target(without(), false, {target->lhs, target->rhs}));
        }
        break;
      default:
        throw DomainError("unexpected connective in NMMS reduction");
    }
    if (!node) {
      for (auto& p : premises)
        if (!run(std::move(p), nullptr)) return false;
      return true;
    }
    node->sequent = s;
    node->rule = rule;
    node->verdict = true;
    node->children.resize(premises.size());
    for (std::size_t k = 0; k < premises.size(); ++k)
      node->verdict = run(std::move(premises[k]), &node->children[k]) && node->verdict;
    return node->verdict;
  }

 private:
  static bool is_atom(const FormulaPtr& f) { return f->kind == Connective::atom; }

  void normalize(FormulaSequent& s) const {
    if (variant_ == Variant::contractive) {
      canonicalize(s.lhs);
      canonicalize(s.rhs);
    }
  }

  void check_atoms(const FormulaSequent& s) const {
    auto visit = [&](auto&& self, const FormulaPtr& f) -> void {
      if (f->kind == Connective::atom) {
        if (!frame_.atoms().find(f->atom)) throw DomainError("unknown atom '" + f->atom + "'");
        return;
      }
      self(self, f->lhs);
      if (f->rhs) self(self, f->rhs);
    };
    for (const auto& f : s.lhs) visit(visit, f);
    for (const auto& f : s.rhs) visit(visit, f);
  }

  Position to_position(const FormulaSequent& s) const {
    Position p = Position::empty(frame_.atom_count());
    for (const auto& f : s.lhs) ++p.left[*frame_.atoms().find(f->atom)];
    for (const auto& f : s.rhs) ++p.right[*frame_.atoms().find(f->atom)];
    return p;
  }

  const Frame& frame_;
  Variant variant_;
  const ReductionPolicy& policy_;
};

void format_node(std::ostringstream& out, const TraceNode& t, std::size_t indent) {
  out << std::string(2 * indent, ' ') << to_string(t.sequent) << "  [" << t.rule << "] "
      << (t.verdict ? "true" : "false") << '\n';
  for (const auto& c : t.children) format_node(out, c, indent + 1);
}

}  // namespace

bool decide(const Frame& f, const FormulaSequent& s, Variant v, const ReductionPolicy& policy) {
  Unfolder u(f, v, policy);
  return u.run(u.prepare(s), nullptr);
}

TraceNode reduction_trace(const Frame& f, const FormulaSequent& s, Variant v,
                          const ReductionPolicy& policy) {
  Unfolder u(f, v, policy);
  TraceNode root;
  u.run(u.prepare(s), &root);
  return root;
}

std::string format_trace(const TraceNode& t) {
  std::ostringstream out;
  format_node(out, t, 0);
  return out.str();
}

}  // namespace roleforge
