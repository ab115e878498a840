#include "roleforge/frame.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace roleforge {

// ** Atoms and positions

bool AtomTable::valid_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

AtomTable::AtomTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i])) throw DomainError("invalid atom name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw DomainError("duplicate atom '" + names_[i] + "'");
  }
}

std::optional<std::size_t> AtomTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

unsigned Position::degree() const {
  return std::accumulate(left.begin(), left.end(), 0U) +
         std::accumulate(right.begin(), right.end(), 0U);
}

unsigned Position::max_count() const {
  unsigned m = 0;
  for (auto c : left) m = std::max<unsigned>(m, c);
  for (auto c : right) m = std::max<unsigned>(m, c);
  return m;
}

std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::diagonal:
      return "diagonal";
    case Generator::containment:
      return "containment";
    case Generator::reflexivity:
      return "reflexivity";
  }
  return "?";
}

std::optional<Generator> parse_generator(std::string_view name) {
  for (auto g : {Generator::diagonal, Generator::containment, Generator::reflexivity})
    if (generator_name(g) == name) return g;
  return std::nullopt;
}

// ** Frame

Frame::Frame(AtomTable atoms, Mode mode, unsigned cap, std::vector<Position> explicit_positions,
             GeneratorSet generators)
    : atoms_(std::move(atoms)), mode_(mode), cap_(mode == Mode::set ? 1 : cap),
      generators_(generators) {
  if (atoms_.size() == 0) throw DomainError("a frame needs at least one atom");
  if (mode_ == Mode::set && atoms_.size() > kMaxSetAtoms)
    throw DomainError("set mode supports at most " + std::to_string(kMaxSetAtoms) + " atoms");
  if (mode_ == Mode::multiset && cap_ == 0) throw DomainError("multiset mode needs cap >= 1");
  for (auto& p : explicit_positions) {
    if (p.left.size() != atoms_.size() || p.right.size() != atoms_.size())
      throw DomainError("position does not match the atom table");
    if (mode_ == Mode::set && p.max_count() > 1)
      throw DomainError("set-mode position with repeated atom");
    explicit_.insert(std::move(p));
  }
}

bool Frame::contains(const Position& p) const {
  if (explicit_.contains(p)) return true;
  const std::size_t n = atom_count();
  if (generators_.contains(Generator::diagonal) && p.left == p.right) return true;
  if (generators_.contains(Generator::containment)) {
    for (std::size_t x = 0; x < n; ++x)
      if (p.left[x] >= 1 && p.right[x] >= 1) return true;
  }
  if (generators_.contains(Generator::reflexivity) && p.degree() == 2) {
    for (std::size_t x = 0; x < n; ++x)
      if (p.left[x] == 1 && p.right[x] == 1) return true;
  }
  return false;
}

bool Frame::encodable(const Position& p) const {
  if (p.left.size() != atom_count() || p.right.size() != atom_count()) return false;
  return p.max_count() <= (mode_ == Mode::set ? 1U : 2U * cap_);
}

bool Frame::in_window(const Position& p) const {
  if (p.left.size() != atom_count() || p.right.size() != atom_count()) return false;
  return p.max_count() <= cap_;
}

std::size_t Frame::window_size() const {
  const std::size_t base = cap_ + 1;
  std::size_t w = 1;
  for (std::size_t k = 0; k < 2 * atom_count(); ++k) {
    if (w > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
    w *= base;
  }
  return w;
}

Frame Frame::with_cap(unsigned cap) const {
  if (mode_ != Mode::multiset) throw DomainError("with_cap applies to multiset frames");
  return Frame(atoms_, mode_, cap, std::vector<Position>(explicit_.begin(), explicit_.end()),
               generators_);
}

bool operator==(const Frame& a, const Frame& b) {
  return a.atoms_ == b.atoms_ && a.mode_ == b.mode_ && a.cap_ == b.cap_ &&
         a.explicit_ == b.explicit_ && a.generators_ == b.generators_;
}

bool bot_member(const Frame& f, const Position& p) {
  if (!f.encodable(p)) throw DomainError("position exceeds the encodable range of the frame");
  return f.contains(p);
}

Position position_sum(const Frame& f, const Position& p, const Position& q) {
  if (p.atoms() != f.atom_count() || q.atoms() != f.atom_count())
    throw DomainError("position does not match the atom table");
  Position r = Position::empty(f.atom_count());
  for (std::size_t x = 0; x < f.atom_count(); ++x) {
    if (f.mode() == Mode::set) {
      r.left[x] = std::max(p.left[x], q.left[x]);
      r.right[x] = std::max(p.right[x], q.right[x]);
    } else {
      r.left[x] = static_cast<std::uint16_t>(p.left[x] + q.left[x]);
      r.right[x] = static_cast<std::uint16_t>(p.right[x] + q.right[x]);
    }
  }
  if (!f.encodable(r)) throw DomainError("position sum overflows 2*cap");
  return r;
}

std::uint64_t set_position_word(const Position& p) {
  const std::size_t n = p.atoms();
  std::uint64_t w = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (p.left[x]) w |= std::uint64_t{1} << x;
    if (p.right[x]) w |= std::uint64_t{1} << (n + x);
  }
  return w;
}

Position position_from_word(std::size_t atoms, std::uint64_t word) {
  Position p = Position::empty(atoms);
  for (std::size_t x = 0; x < atoms; ++x) {
    p.left[x] = (word >> x) & 1U;
    p.right[x] = (word >> (atoms + x)) & 1U;
  }
  return p;
}

bool canonical_position_less(Mode mode, const Position& a, const Position& b) {
  if (mode == Mode::set) return set_position_word(a) < set_position_word(b);
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a < b;
}

std::vector<Position> enumerate_positions(const Frame& f) {
  constexpr std::size_t kMax = std::size_t{1} << 24;
  const std::size_t w = f.window_size();
  if (w > kMax) throw DomainError("window of " + std::to_string(w) + " positions is too large");
  const std::size_t n = f.atom_count();
  std::vector<Position> out;
  out.reserve(w);
  if (f.mode() == Mode::set) {
    for (std::uint64_t word = 0; word < w; ++word) out.push_back(position_from_word(n, word));
    return out;
  }
  // Mixed-radix counter over the 2n counts, then the graded order.
  const unsigned base = f.cap() + 1;
  std::vector<std::uint16_t> digits(2 * n, 0);
  for (std::size_t k = 0; k < w; ++k) {
    Position p = Position::empty(n);
    std::copy(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n), p.left.begin());
    std::copy(digits.begin() + static_cast<std::ptrdiff_t>(n), digits.end(), p.right.begin());
    out.push_back(std::move(p));
    for (std::size_t d = 0; d < digits.size(); ++d) {
      if (++digits[d] < base) break;
      digits[d] = 0;
    }
  }
  std::sort(out.begin(), out.end(), [](const Position& a, const Position& b) {
    return canonical_position_less(Mode::multiset, a, b);
  });
  return out;
}

Verdict<std::size_t> is_reflexive(const Frame& f) {
  for (std::size_t x = 0; x < f.atom_count(); ++x) {
    Position p = Position::empty(f.atom_count());
    p.left[x] = p.right[x] = 1;
    if (!f.contains(p)) return {false, x};
  }
  return {true, std::nullopt};
}

Verdict<Position> is_containment(const Frame& f) {
  if (f.mode() != Mode::set) throw DomainError("containment check requires a set-mode frame");
  for (const auto& p : enumerate_positions(f)) {
    bool overlap = false;
    for (std::size_t x = 0; x < f.atom_count() && !overlap; ++x) overlap = p.left[x] && p.right[x];
    if (overlap && !f.contains(p)) return {false, p};
  }
  return {true, std::nullopt};
}

// ** Text formats

namespace {

std::string join_side(const AtomTable& atoms, const std::vector<std::uint16_t>& side) {
  std::string out;
  for (std::size_t x = 0; x < side.size(); ++x) {
    for (unsigned c = 0; c < side[x]; ++c) {
      if (!out.empty()) out += ", ";
      out += atoms.name(x);
    }
  }
  return out;
}

enum class Tok { ident, number, equals, lbrace, rbrace, comma, turnstile, semicolon, newline, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::newline, "\n", line, col});
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    const std::size_t start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
      continue;
    }
    if (c == '|' && i + 1 < text.size() && text[i + 1] == '-') {
      out.push_back({Tok::turnstile, "|-", line, start_col});
      i += 2;
      col += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '=':
        kind = Tok::equals;
        break;
      case '{':
        kind = Tok::lbrace;
        break;
      case '}':
        kind = Tok::rbrace;
        break;
      case ',':
        kind = Tok::comma;
        break;
      case ';':
        kind = Tok::semicolon;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
    }
    out.push_back({kind, std::string(1, c), line, start_col});
    ++i;
    ++col;
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

struct RawAtom {
  std::string name;
  std::size_t line, column;
};

struct RawPosition {
  std::vector<RawAtom> left, right;
  std::size_t line, column;
};

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  void skip_newlines() {
    while (at(Tok::newline) || at(Tok::semicolon)) next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::end       ? "end of input"
                        : t.kind == Tok::newline ? "end of line"
                                                 : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// side := (ident (',' ident)*)?
std::vector<RawAtom> parse_side(Cursor& cur) {
  std::vector<RawAtom> out;
  if (!cur.at(Tok::ident)) return out;
  while (true) {
    const auto& t = cur.expect(Tok::ident, "atom name");
    out.push_back({t.text, t.line, t.column});
    if (!cur.at(Tok::comma)) break;
    cur.next();
  }
  return out;
}

RawPosition parse_raw_position(Cursor& cur) {
  RawPosition rp;
  rp.line = cur.peek().line;
  rp.column = cur.peek().column;
  rp.left = parse_side(cur);
  cur.expect(Tok::turnstile, "'|-'");
  rp.right = parse_side(cur);
  return rp;
}

Position resolve(const AtomTable& atoms, Mode mode, const RawPosition& rp) {
  Position p = Position::empty(atoms.size());
  auto fill = [&](const std::vector<RawAtom>& side, std::vector<std::uint16_t>& counts) {
    for (const auto& a : side) {
      auto idx = atoms.find(a.name);
      if (!idx) throw ParseError("unknown atom '" + a.name + "'", a.line, a.column);
      if (mode == Mode::set && counts[*idx] > 0)
        throw ParseError("repeated atom '" + a.name + "' is only allowed in multiset mode", a.line,
                         a.column);
      ++counts[*idx];
    }
  };
  fill(rp.left, p.left);
  fill(rp.right, p.right);
  return p;
}

}  // namespace

std::string format_position(const AtomTable& atoms, const Position& p) {
  std::string l = join_side(atoms, p.left), r = join_side(atoms, p.right);
  std::string out = l.empty() ? "|-" : l + " |-";
  if (!r.empty()) out += " " + r;
  return out;
}

std::string format_signed(const AtomTable& atoms, const Position& p) {
  std::string out;
  auto emit = [&](const std::vector<std::uint16_t>& side, char sign) {
    for (std::size_t x = 0; x < side.size(); ++x) {
      if (side[x] == 0) continue;
      out += atoms.name(x);
      out += sign;
      if (side[x] > 1) out += "^" + std::to_string(side[x]);
    }
  };
  emit(p.left, '+');
  emit(p.right, '-');
  return out.empty() ? "0" : out;
}

Position parse_position(const AtomTable& atoms, Mode mode, std::string_view text) {
  Cursor cur(tokenize(text, 0));
  auto rp = parse_raw_position(cur);
  if (!cur.at(Tok::end)) cur.fail("trailing input after position");
  return resolve(atoms, mode, rp);
}

Frame parse_frame(std::string_view text) {
  Cursor cur(tokenize(text, 1));
  std::optional<std::vector<std::string>> atom_names;
  std::optional<Mode> mode;
  std::optional<unsigned> cap;
  std::optional<std::pair<std::size_t, std::size_t>> cap_at;
  GeneratorSet gens;
  bool seen_generators = false, seen_incoherent = false;
  std::vector<RawPosition> raw;

  while (true) {
    cur.skip_newlines();
    if (cur.at(Tok::end)) break;
    const Token key = cur.expect(Tok::ident, "a statement keyword");
    if (key.text == "atoms" || key.text == "mode" || key.text == "cap") {
      cur.expect(Tok::equals, "'='");
      if (key.text == "atoms") {
        if (atom_names) throw ParseError("duplicate 'atoms' statement", key.line, key.column);
        atom_names.emplace();
        while (cur.at(Tok::ident)) atom_names->push_back(cur.next().text);
        if (atom_names->empty()) cur.fail("expected at least one atom");
        std::vector<std::string> sorted = *atom_names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw ParseError("duplicate atom name", key.line, key.column);
      } else if (key.text == "mode") {
        if (mode) throw ParseError("duplicate 'mode' statement", key.line, key.column);
        const auto& v = cur.expect(Tok::ident, "'set' or 'multiset'");
        if (v.text == "set") {
          mode = Mode::set;
        } else if (v.text == "multiset") {
          mode = Mode::multiset;
        } else {
          throw ParseError("unknown mode '" + v.text + "'", v.line, v.column);
        }
      } else {
        if (cap) throw ParseError("duplicate 'cap' statement", key.line, key.column);
        const auto& v = cur.expect(Tok::number, "a positive integer");
        unsigned long value = std::stoul(v.text);
        if (value == 0 || value > 255) throw ParseError("cap must be in 1..255", v.line, v.column);
        cap = static_cast<unsigned>(value);
        cap_at = {key.line, key.column};
      }
    } else if (key.text == "generators") {
      if (seen_generators) throw ParseError("duplicate 'generators' block", key.line, key.column);
      seen_generators = true;
      cur.expect(Tok::lbrace, "'{'");
      while (true) {
        cur.skip_newlines();
        if (cur.at(Tok::rbrace)) break;
        const auto& g = cur.expect(Tok::ident, "a generator name");
        auto gen = parse_generator(g.text);
        if (!gen) throw ParseError("unknown generator '" + g.text + "'", g.line, g.column);
        gens.insert(*gen);
      }
      cur.next();
    } else if (key.text == "incoherent") {
      if (seen_incoherent) throw ParseError("duplicate 'incoherent' block", key.line, key.column);
      seen_incoherent = true;
      cur.expect(Tok::lbrace, "'{'");
      while (true) {
        cur.skip_newlines();
        if (cur.at(Tok::rbrace)) break;
        raw.push_back(parse_raw_position(cur));
        if (!cur.at(Tok::newline) && !cur.at(Tok::semicolon) && !cur.at(Tok::rbrace))
          cur.fail("expected end of position");
      }
      cur.next();
    } else {
      throw ParseError("unknown statement '" + key.text + "'", key.line, key.column);
    }
    if (!cur.at(Tok::newline) && !cur.at(Tok::semicolon) && !cur.at(Tok::end))
      cur.fail("expected end of statement");
  }

  if (!atom_names) throw ParseError("missing 'atoms' statement", 1, 1);
  if (!mode) mode = Mode::set;
  if (*mode == Mode::multiset && !cap) throw ParseError("multiset mode requires 'cap'", 1, 1);
  if (*mode == Mode::set && cap)
    throw ParseError("'cap' is only allowed in multiset mode", cap_at->first, cap_at->second);
  if (*mode == Mode::set && atom_names->size() > kMaxSetAtoms)
    throw ParseError("set mode supports at most " + std::to_string(kMaxSetAtoms) + " atoms", 1, 1);

  AtomTable atoms(*atom_names);
  std::vector<Position> positions;
  positions.reserve(raw.size());
  for (const auto& rp : raw) positions.push_back(resolve(atoms, *mode, rp));
  return Frame(std::move(atoms), *mode, cap.value_or(1), std::move(positions), gens);
}

std::string serialize_frame(const Frame& f) {
  std::ostringstream out;
  out << "atoms =";
  for (const auto& n : f.atoms().names()) out << ' ' << n;
  out << "\nmode = " << (f.mode() == Mode::set ? "set" : "multiset") << '\n';
  if (f.mode() == Mode::multiset) out << "cap = " << f.cap() << '\n';
  if (!f.generators().empty()) {
    out << "generators {";
    for (auto g : {Generator::diagonal, Generator::containment, Generator::reflexivity})
      if (f.generators().contains(g)) out << ' ' << generator_name(g);
    out << " }\n";
  }
  std::vector<Position> ps(f.explicit_positions().begin(), f.explicit_positions().end());
  std::sort(ps.begin(), ps.end(), [&](const Position& a, const Position& b) {
    return canonical_position_less(f.mode(), a, b);
  });
  if (ps.empty()) {
    out << "incoherent { }\n";
  } else {
    out << "incoherent {\n";
    for (const auto& p : ps) out << "  " << format_position(f.atoms(), p) << '\n';
    out << "}\n";
  }
  return out.str();
}

Frame load_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open frame file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_frame(buf.str());
}

}  // namespace roleforge
