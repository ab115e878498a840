#include "roleforge/oracles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace roleforge::oracles {

// ** Classical truth tables

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Connective::atom) {
    out.insert(f.atom);
    return;
  }
  collect_atoms(*f.lhs, out);
  if (f.rhs) collect_atoms(*f.rhs, out);
}

bool truth(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind) {
    case Connective::atom:
      return v.at(f.atom);
    case Connective::neg:
      return !truth(*f.lhs, v);
    case Connective::and_:
      return truth(*f.lhs, v) && truth(*f.rhs, v);
    case Connective::or_:
      return truth(*f.lhs, v) || truth(*f.rhs, v);
    case Connective::imp:
      return !truth(*f.lhs, v) || truth(*f.rhs, v);
    default:
      throw DomainError("classical_valid accepts Boolean connectives only");
  }
}

}  // namespace

bool classical_valid(const FormulaSequent& s) {
  std::set<std::string> names;
  for (const auto& f : s.lhs) collect_atoms(*f, names);
  for (const auto& f : s.rhs) collect_atoms(*f, names);
  if (names.size() > 20) throw DomainError("classical_valid supports at most 20 atoms");
  const std::vector<std::string> atoms(names.begin(), names.end());
  std::map<std::string, bool> v;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (bits >> i) & 1U;
    const bool premises = std::all_of(s.lhs.begin(), s.lhs.end(), [&](auto& f) { return truth(*f, v); });
    if (!premises) continue;
    if (std::none_of(s.rhs.begin(), s.rhs.end(), [&](auto& f) { return truth(*f, v); })) return false;
  }
  return true;
}

// ** MALL proof search

namespace {

enum class Nnf : std::uint8_t { lit, tensor, parr, plus, with };

struct NnfNode {
  Nnf kind;
  std::string atom;
  bool positive = true;
  int a = -1, b = -1;
};

class MallProver {
 public:
  int intern(const Formula& f, bool negated) {
    switch (f.kind) {
      case Connective::atom:
        return node({Nnf::lit, f.atom, !negated, -1, -1});
      case Connective::neg:
        return intern(*f.lhs, !negated);
      case Connective::tensor:
        return node({negated ? Nnf::parr : Nnf::tensor, {}, true, intern(*f.lhs, negated), intern(*f.rhs, negated)});
      case Connective::parr:
        return node({negated ? Nnf::tensor : Nnf::parr, {}, true, intern(*f.lhs, negated), intern(*f.rhs, negated)});
      case Connective::plus:
        return node({negated ? Nnf::with : Nnf::plus, {}, true, intern(*f.lhs, negated), intern(*f.rhs, negated)});
      case Connective::with:
        return node({negated ? Nnf::plus : Nnf::with, {}, true, intern(*f.lhs, negated), intern(*f.rhs, negated)});
      default:
        throw DomainError("mall_provable accepts linear connectives only");
    }
  }

  bool prove(std::vector<int> seq) {
    std::sort(seq.begin(), seq.end());
    if (auto it = memo_.find(seq); it != memo_.end()) return it->second;
    const bool r = search(seq);
    memo_.emplace(std::move(seq), r);
    return r;
  }

 private:
  int node(NnfNode n) {
    auto key = std::make_tuple(static_cast<int>(n.kind), n.atom, n.positive, n.a, n.b);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    nodes_.push_back(std::move(n));
    const int id = static_cast<int>(nodes_.size()) - 1;
    ids_.emplace(key, id);
    return id;
  }

  static std::vector<int> without(const std::vector<int>& seq, std::size_t k) {
    std::vector<int> r = seq;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
  }

  bool search(const std::vector<int>& seq) {
    // Invertible rules first.
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const NnfNode& n = nodes_[static_cast<std::size_t>(seq[k])];
      if (n.kind == Nnf::parr) {
        auto r = without(seq, k);
        r.push_back(n.a);
        r.push_back(n.b);
        return prove(std::move(r));
      }
      if (n.kind == Nnf::with) {
        auto l = without(seq, k), r = l;
        l.push_back(n.a);
        r.push_back(n.b);
        return prove(std::move(l)) && prove(std::move(r));
      }
    }
    if (seq.size() == 2) {
      const NnfNode& x = nodes_[static_cast<std::size_t>(seq[0])];
      const NnfNode& y = nodes_[static_cast<std::size_t>(seq[1])];
      if (x.kind == Nnf::lit && y.kind == Nnf::lit && x.atom == y.atom && x.positive != y.positive)
        return true;
    }
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const NnfNode& n = nodes_[static_cast<std::size_t>(seq[k])];
      if (n.kind == Nnf::plus) {
        auto l = without(seq, k), r = l;
        l.push_back(n.a);
        r.push_back(n.b);
        if (prove(std::move(l)) || prove(std::move(r))) return true;
      } else if (n.kind == Nnf::tensor) {
        const auto rest = without(seq, k);
        const std::size_t m = rest.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
          std::vector<int> l{n.a}, r{n.b};
          for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1U ? l : r).push_back(rest[i]);
          if (prove(std::move(l)) && prove(std::move(r))) return true;
        }
      }
    }
    return false;
  }

  std::vector<NnfNode> nodes_;
  std::map<std::tuple<int, std::string, bool, int, int>, int> ids_;
  std::map<std::vector<int>, bool> memo_;
};

}  // namespace

bool mall_provable(const FormulaSequent& s, const MallOptions& opt) {
  if (connective_count(s) > opt.max_connectives)
    throw DomainError("sequent has more than " + std::to_string(opt.max_connectives) +
                      " connectives");
  MallProver p;
  std::vector<int> seq;
  for (const auto& f : s.lhs) seq.push_back(p.intern(*f, true));
  for (const auto& f : s.rhs) seq.push_back(p.intern(*f, false));
  return p.prove(std::move(seq));
}

// ** Naive rsr

namespace {

Position raw_sum(Mode mode, const Position& p, const Position& q) {
  Position r = Position::empty(p.atoms());
  for (std::size_t x = 0; x < p.atoms(); ++x) {
    r.left[x] = static_cast<std::uint16_t>(p.left[x] + q.left[x]);
    r.right[x] = static_cast<std::uint16_t>(p.right[x] + q.right[x]);
    if (mode == Mode::set) {
      r.left[x] = std::min<std::uint16_t>(r.left[x], 1);
      r.right[x] = std::min<std::uint16_t>(r.right[x], 1);
    }
  }
  return r;
}

// {y in window | p + y incoherent}, as a bit mask.
std::uint64_t singleton_perp(const Frame& f, const std::vector<Position>& window, const Position& p) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < window.size(); ++j)
    if (f.contains(raw_sum(f.mode(), p, window[j]))) m |= std::uint64_t{1} << j;
  return m;
}

// perp[S] for every subset S of a window of `singles.size()` positions.
std::vector<std::uint64_t> all_subset_perps(const std::vector<std::uint64_t>& singles, std::uint64_t full) {
  const std::size_t w = singles.size();
  std::vector<std::uint64_t> perp(std::size_t{1} << w);
  perp[0] = full;
  for (std::size_t s = 1; s < perp.size(); ++s) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
    perp[s] = perp[s & (s - 1)] & singles[low];
  }
  return perp;
}

std::uint64_t full_mask(std::size_t w) { return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

}  // namespace

PositionSet rsr_naive(const Frame& f, const std::vector<Position>& window, const PositionSet& a) {
  if (window.size() > 4096) throw DomainError("rsr_naive supports windows of at most 4096 positions");
  PositionSet out(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < window.size() && all; ++k)
      if (a.test(k)) all = f.contains(raw_sum(f.mode(), window[k], window[i]));
    if (all) out.set(i);
  }
  return out;
}

std::vector<PositionSet> naive_roles(const Frame& f) {
  const auto window = enumerate_positions(f);
  const std::size_t w = window.size();
  if (w > 16) throw DomainError("naive_roles supports windows of at most 16 positions");
  std::vector<std::uint64_t> singles;
  for (const auto& p : window) singles.push_back(singleton_perp(f, window, p));
  std::set<std::uint64_t> distinct;
  for (auto m : all_subset_perps(singles, full_mask(w))) distinct.insert(m);
  std::vector<PositionSet> out;
  for (auto m : distinct) {
    PositionSet s(w);
    for (std::size_t i = 0; i < w; ++i)
      if ((m >> i) & 1U) s.set(i);
    out.push_back(std::move(s));
  }
  return out;
}

bool continuity_condition4(const FrameMorphism& m) {
  const Frame& src = m.source();
  const Frame& tgt = m.target();
  const auto sw = enumerate_positions(src);
  const auto tw = enumerate_positions(tgt);
  if (sw.size() > 16 || tw.size() > 64)
    throw DomainError("condition (4) reference supports source windows of at most 16 positions");
  std::vector<std::uint64_t> src_single, tgt_single;
  for (const auto& p : sw) {
    src_single.push_back(singleton_perp(src, sw, p));
    tgt_single.push_back(singleton_perp(tgt, tw, m.apply(p)));
  }
  const auto src_perp = all_subset_perps(src_single, full_mask(sw.size()));
  const auto tgt_perp = all_subset_perps(tgt_single, full_mask(tw.size()));

  // For a fixed value v of A^bot, the weakest antecedent image is the union
  // of f(A)^bot and the strongest consequent the intersection of f(B)^bot.
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> by_value;
  for (std::size_t s = 0; s < src_perp.size(); ++s) {
    auto [it, fresh] = by_value.try_emplace(src_perp[s], tgt_perp[s], tgt_perp[s]);
    if (!fresh) {
      it->second.first |= tgt_perp[s];
      it->second.second &= tgt_perp[s];
    }
  }
  for (const auto& [v, lo_hi] : by_value)
    for (const auto& [w, other] : by_value)
      if ((v & ~w) == 0 && (lo_hi.first & ~other.second) != 0) return false;
  return true;
}

}  // namespace roleforge::oracles
