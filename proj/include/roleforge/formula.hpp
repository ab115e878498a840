#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "roleforge/error.hpp"

namespace roleforge {

enum class Connective : std::uint8_t { atom, neg, and_, or_, imp, tensor, plus, parr, with };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable syntax node. Subtrees are shared between formulas.
struct Formula {
  Connective kind;
  std::string atom;  // atoms only
  FormulaPtr lhs;    // negation operand or left operand
  FormulaPtr rhs;
  std::size_t hash;
  unsigned depth;
  unsigned connectives;
};

FormulaPtr make_atom(std::string name);
FormulaPtr make_neg(FormulaPtr f);
FormulaPtr make_binary(Connective c, FormulaPtr a, FormulaPtr b);

bool equal(const Formula& a, const Formula& b);
struct FormulaHash {
  std::size_t operator()(const FormulaPtr& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return a == b || equal(*a, *b); }
};

bool is_binary(Connective c);
// ASCII operator symbol: "~", "/\\", "\\/", "->", "*", "+", "|", "&".
std::string_view symbol(Connective c);
bool is_classical_connective(Connective c);  // neg, and, or, imp
bool is_linear_connective(Connective c);     // neg, tensor, plus, parr, with
// Whether every connective of f satisfies the predicate.
bool all_connectives(const Formula& f, bool (*pred)(Connective));

// Minimal parenthesization; parse_formula(to_string(f)) is structurally f.
std::string to_string(const Formula& f);

// Precedence from tightest: ~, then * and &, then + and |, then /\, then \/,
// then ->. Binary operators associate to the left.
FormulaPtr parse_formula(std::string_view text);

struct FormulaSequent {
  std::vector<FormulaPtr> lhs;
  std::vector<FormulaPtr> rhs;
};

// "f1, f2 |- g1, g2"; either side may be empty and blank text is the empty
// sequent.
FormulaSequent parse_sequent(std::string_view text);
std::string to_string(const FormulaSequent& s);
unsigned connective_count(const FormulaSequent& s);

// Every formula of depth <= max_depth over `atoms` built from `unary_neg`
// and the given binary connectives, ordered by depth and then by
// construction order. Throws DomainError past `limit` formulas.
std::vector<FormulaPtr> enumerate_formulas(const std::vector<std::string>& atoms, unsigned max_depth,
                                           const std::vector<Connective>& binaries,
                                           bool unary_neg = true, std::size_t limit = 1'000'000);

}  // namespace roleforge
