#include "roleforge/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace roleforge {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

int precedence(Connective c) {
  switch (c) {
    case Connective::imp:
      return 1;
    case Connective::or_:
      return 2;
    case Connective::and_:
      return 3;
    case Connective::plus:
    case Connective::parr:
      return 4;
    case Connective::tensor:
    case Connective::with:
      return 5;
    default:
      return 6;
  }
}

}  // namespace

FormulaPtr make_atom(std::string name) {
  const std::size_t h = mix(0, std::hash<std::string>{}(name));
  return std::make_shared<const Formula>(
      Formula{Connective::atom, std::move(name), nullptr, nullptr, h, 0, 0});
}

FormulaPtr make_neg(FormulaPtr f) {
  const std::size_t h = mix(static_cast<std::size_t>(Connective::neg) + 1, f->hash);
  const unsigned d = f->depth + 1, c = f->connectives + 1;
  return std::make_shared<const Formula>(Formula{Connective::neg, {}, std::move(f), nullptr, h, d, c});
}

FormulaPtr make_binary(Connective c, FormulaPtr a, FormulaPtr b) {
  if (!is_binary(c)) throw DomainError("not a binary connective");
  const std::size_t h = mix(mix(static_cast<std::size_t>(c) + 1, a->hash), b->hash);
  const unsigned d = std::max(a->depth, b->depth) + 1;
  const unsigned n = a->connectives + b->connectives + 1;
  return std::make_shared<const Formula>(Formula{c, {}, std::move(a), std::move(b), h, d, n});
}

bool equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.hash != b.hash) return false;
  if (a.kind == Connective::atom) return a.atom == b.atom;
  if (!equal(*a.lhs, *b.lhs)) return false;
  return a.rhs == nullptr || equal(*a.rhs, *b.rhs);
}

bool is_binary(Connective c) { return c != Connective::atom && c != Connective::neg; }

std::string_view symbol(Connective c) {
  switch (c) {
    case Connective::atom:
      return "";
    case Connective::neg:
      return "~";
    case Connective::and_:
      return "/\\";
    case Connective::or_:
      return "\\/";
    case Connective::imp:
      return "->";
    case Connective::tensor:
      return "*";
    case Connective::plus:
      return "+";
    case Connective::parr:
      return "|";
    case Connective::with:
      return "&";
  }
  return "?";
}

bool is_classical_connective(Connective c) {
  return c == Connective::atom || c == Connective::neg || c == Connective::and_ ||
         c == Connective::or_ || c == Connective::imp;
}

bool is_linear_connective(Connective c) {
  return c == Connective::atom || c == Connective::neg || c == Connective::tensor ||
         c == Connective::plus || c == Connective::parr || c == Connective::with;
}

bool all_connectives(const Formula& f, bool (*pred)(Connective)) {
  if (!pred(f.kind)) return false;
  if (f.lhs && !all_connectives(*f.lhs, pred)) return false;
  return !f.rhs || all_connectives(*f.rhs, pred);
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Connective::atom:
      return f.atom;
    case Connective::neg: {
      std::string inner = to_string(*f.lhs);
      if (is_binary(f.lhs->kind)) inner = "(" + inner + ")";
      return "~" + inner;
    }
    default: {
      const int p = precedence(f.kind);
      std::string l = to_string(*f.lhs), r = to_string(*f.rhs);
      if (is_binary(f.lhs->kind) && precedence(f.lhs->kind) < p) l = "(" + l + ")";
      if (is_binary(f.rhs->kind) && precedence(f.rhs->kind) <= p) r = "(" + r + ")";
      return l + " " + std::string(symbol(f.kind)) + " " + r;
    }
  }
}

// ** Parsing

namespace {

enum class Tok { ident, op, lparen, rparen, comma, turnstile, end };

struct Token {
  Tok kind;
  Connective op = Connective::atom;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, Connective::atom, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    auto op = [&](Connective k, std::size_t len) {
      out.push_back({Tok::op, k, std::string(s.substr(i, len)), col});
      i += len;
    };
    if (starts("|-")) {
      out.push_back({Tok::turnstile, Connective::atom, "|-", col});
      i += 2;
    } else if (starts("/\\")) {
      op(Connective::and_, 2);
    } else if (starts("\\/")) {
      op(Connective::or_, 2);
    } else if (starts("->")) {
      op(Connective::imp, 2);
    } else if (c == '~') {
      op(Connective::neg, 1);
    } else if (c == '*') {
      op(Connective::tensor, 1);
    } else if (c == '+') {
      op(Connective::plus, 1);
    } else if (c == '|') {
      op(Connective::parr, 1);
    } else if (c == '&') {
      op(Connective::with, 1);
    } else if (c == '(') {
      out.push_back({Tok::lparen, Connective::atom, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, Connective::atom, ")", col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::comma, Connective::atom, ",", col});
      ++i;
    } else {
      std::size_t j = i + 1;
      while (j < s.size() && std::ispunct(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
             s[j] != ')' && s[j] != ',')
        ++j;
      throw ParseError("unknown connective '" + std::string(s.substr(i, j - i)) + "'", 0, col);
    }
  }
  out.push_back({Tok::end, Connective::atom, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw ParseError(what + (t.kind == Tok::end ? ", found end of input" : ", found '" + t.text + "'"),
                     0, t.column);
  }

  FormulaPtr expr(int min_prec = 1) {
    FormulaPtr lhs = unary();
    while (at(Tok::op) && peek().op != Connective::neg && precedence(peek().op) >= min_prec) {
      const Connective c = next().op;
      FormulaPtr rhs = expr(precedence(c) + 1);
      lhs = make_binary(c, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FormulaPtr unary() {
    if (at(Tok::op) && peek().op == Connective::neg) {
      next();
      return make_neg(unary());
    }
    if (at(Tok::lparen)) {
      next();
      FormulaPtr f = expr();
      if (!at(Tok::rparen)) fail("expected ')'");
      next();
      return f;
    }
    if (at(Tok::ident)) return make_atom(next().text);
    fail("expected a formula");
  }

  std::vector<FormulaPtr> list(Tok stop) {
    std::vector<FormulaPtr> out;
    if (at(stop)) return out;
    while (true) {
      out.push_back(expr());
      if (!at(Tok::comma)) break;
      next();
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join_formulas(const std::vector<FormulaPtr>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += to_string(*fs[i]);
  }
  return out;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p(lex(text));
  FormulaPtr f = p.expr();
  if (!p.at(Tok::end)) p.fail("unexpected input after formula");
  return f;
}

FormulaSequent parse_sequent(std::string_view text) {
  auto toks = lex(text);
  if (toks.size() == 1) return {};
  Parser p(std::move(toks));
  FormulaSequent s;
  s.lhs = p.list(Tok::turnstile);
  if (!p.at(Tok::turnstile)) p.fail("expected ',' or '|-'");
  p.next();
  s.rhs = p.list(Tok::end);
  if (!p.at(Tok::end)) p.fail("expected ',' or end of sequent");
  return s;
}

std::string to_string(const FormulaSequent& s) {
  std::string l = join_formulas(s.lhs), r = join_formulas(s.rhs);
  std::string out = l.empty() ? "|-" : l + " |-";
  if (!r.empty()) out += " " + r;
  return out;
}

unsigned connective_count(const FormulaSequent& s) {
  unsigned n = 0;
  for (const auto& f : s.lhs) n += f->connectives;
  for (const auto& f : s.rhs) n += f->connectives;
  return n;
}

std::vector<FormulaPtr> enumerate_formulas(const std::vector<std::string>& atoms, unsigned max_depth,
                                           const std::vector<Connective>& binaries, bool unary_neg,
                                           std::size_t limit) {
  std::vector<FormulaPtr> all;
  for (const auto& a : atoms) all.push_back(make_atom(a));
  std::size_t prev_begin = 0;  // first formula of the previous depth
  auto push = [&](FormulaPtr f) {
    if (all.size() >= limit)
      throw DomainError("formula enumeration exceeds " + std::to_string(limit) + " formulas");
    all.push_back(std::move(f));
  };
  for (unsigned d = 1; d <= max_depth; ++d) {
    const std::size_t end = all.size();
    if (unary_neg)
      for (std::size_t i = prev_begin; i < end; ++i) push(make_neg(all[i]));
    for (auto c : binaries) {
      for (std::size_t i = 0; i < end; ++i) {
        for (std::size_t j = 0; j < end; ++j) {
          if (i < prev_begin && j < prev_begin) continue;
          push(make_binary(c, all[i], all[j]));
        }
      }
    }
    prev_begin = end;
  }
  return all;
}

}  // namespace roleforge
