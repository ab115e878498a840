#include <algorithm>
#include <cctype>

#include "roleforge/frame.hpp"
#include "roleforge/rsr.hpp"

namespace roleforge {

FrameMorphism::FrameMorphism(const Frame& source, const Frame& target, std::vector<std::size_t> map)
    : source_(source), target_(target), map_(std::move(map)) {
  if (source_.mode() != target_.mode())
    throw DomainError("morphisms between set-mode and multiset-mode frames are not supported");
  if (map_.size() != source_.atom_count()) throw DomainError("morphism must map every source atom");
  for (auto t : map_)
    if (t >= target_.atom_count()) throw DomainError("morphism maps to an unknown target atom");
}

Position FrameMorphism::apply(const Position& p) const {
  Position out = Position::empty(target_.atom_count());
  for (std::size_t x = 0; x < map_.size(); ++x) {
    out.left[map_[x]] = static_cast<std::uint16_t>(out.left[map_[x]] + p.left[x]);
    out.right[map_[x]] = static_cast<std::uint16_t>(out.right[map_[x]] + p.right[x]);
  }
  if (target_.mode() == Mode::set) {
    for (auto& c : out.left) c = std::min<std::uint16_t>(c, 1);
    for (auto& c : out.right) c = std::min<std::uint16_t>(c, 1);
  }
  return out;
}

FrameMorphism parse_morphism(const Frame& source, const Frame& target, std::string_view text) {
  std::vector<std::optional<std::size_t>> map(source.atom_count());
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto ident = [&]() -> std::string {
    skip_ws();
    std::size_t j = i;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    if (j == i) throw ParseError("expected atom name", 0, i + 1);
    std::string s(text.substr(i, j - i));
    i = j;
    return s;
  };
  skip_ws();
  while (i < text.size()) {
    const std::size_t at = i + 1;
    std::string from = ident();
    skip_ws();
    if (i >= text.size() || text[i] != '=') throw ParseError("expected '='", 0, i + 1);
    ++i;
    std::string to = ident();
    auto s = source.atoms().find(from);
    if (!s) throw ParseError("unknown source atom '" + from + "'", 0, at);
    auto t = target.atoms().find(to);
    if (!t) throw ParseError("unknown target atom '" + to + "'", 0, at);
    if (map[*s]) throw ParseError("atom '" + from + "' mapped twice", 0, at);
    map[*s] = *t;
    skip_ws();
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError("expected ','", 0, i + 1);
      ++i;
      skip_ws();
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (!map[x]) throw ParseError("source atom '" + source.atoms().name(x) + "' is not mapped", 0, 1);
    out.push_back(*map[x]);
  }
  return FrameMorphism(source, target, std::move(out));
}

namespace {

// Source window used by the morphism checks: capped at the smaller cap in
// multiset mode so both sides are compared on a common range.
std::vector<Position> source_window(const FrameMorphism& m) {
  const Frame& s = m.source();
  if (s.mode() == Mode::set) return enumerate_positions(s);
  return enumerate_positions(s.with_cap(std::min(s.cap(), m.target().cap())));
}

Position raw_sum(const Position& p, const Position& q) {
  Position r = p;
  for (std::size_t x = 0; x < r.atoms(); ++x) {
    r.left[x] = static_cast<std::uint16_t>(r.left[x] + q.left[x]);
    r.right[x] = static_cast<std::uint16_t>(r.right[x] + q.right[x]);
  }
  return r;
}

Position clamp(Mode mode, Position p) {
  if (mode == Mode::set) {
    for (auto& c : p.left) c = std::min<std::uint16_t>(c, 1);
    for (auto& c : p.right) c = std::min<std::uint16_t>(c, 1);
  }
  return p;
}

}  // namespace

Verdict<MorphismWitness> check_conservative(const FrameMorphism& m) {
  for (const auto& p : source_window(m)) {
    const Position fp = m.apply(p);
    const bool src = m.source().contains(p);
    const bool tgt = m.target().contains(fp);
    if (src != tgt)
      return {false, MorphismWitness{p, fp,
                                     src ? "incoherent in the source, coherent in the target"
                                         : "coherent in the source, incoherent in the target"}};
  }
  return {true, std::nullopt};
}

Verdict<MorphismWitness> check_bot_preserving(const FrameMorphism& m) {
  for (const auto& p : source_window(m)) {
    if (!m.source().contains(p)) continue;
    const Position fp = m.apply(p);
    if (!m.target().contains(fp))
      return {false, MorphismWitness{p, fp, "incoherent position mapped to a coherent one"}};
  }
  return {true, std::nullopt};
}

Verdict<MorphismWitness> check_continuity_closed_preimages(const FrameMorphism& m) {
  if (m.source().mode() == Mode::multiset && m.source().cap() != m.target().cap())
    throw DomainError("continuity in multiset mode requires equal caps");
  PositionSpace src(m.source(), Execution::serial);
  std::vector<Position> images;
  images.reserve(src.size());
  for (const auto& p : src.positions()) images.push_back(m.apply(p));
  const Mode mode = m.target().mode();
  for (const auto& y : enumerate_positions(m.target())) {
    PositionSet pre = src.empty_set();
    for (std::size_t i = 0; i < src.size(); ++i)
      if (m.target().contains(clamp(mode, raw_sum(images[i], y)))) pre.set(i);
    PositionSet cl = closure(src, pre);
    if (!cl.is_subset_of(pre)) {
      PositionSet escaping = cl;
      escaping.subtract(pre);
      return {false, MorphismWitness{src.position(escaping.first()), y,
                                     "preimage of the target fact is not closed"}};
    }
  }
  return {true, std::nullopt};
}

Verdict<MorphismWitness> check_continuous(const FrameMorphism& m) {
  if (auto v = check_bot_preserving(m); !v) return v;
  return check_continuity_closed_preimages(m);
}

}  // namespace roleforge
