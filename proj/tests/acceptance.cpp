// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "roleforge/audit.hpp"
#include "roleforge/nmms.hpp"
#include "roleforge/oracles.hpp"
#include "roleforge/quantale.hpp"
#include "roleforge/rsr.hpp"
#include "roleforge/semantics.hpp"
#include "support.hpp"

using namespace roleforge;
using namespace roleforge::testing;

namespace {

// Wall-clock limits in seconds; zero means unbounded.
constexpr double kLimitAC1 = 1.0;
constexpr double kLimitAC2 = 5.0;
constexpr double kLimitAC3 = 30.0;
constexpr double kLimitAC6 = 120.0;

// Seeds and sizes.
constexpr std::uint64_t kSeedTwoAtom = 2024;
constexpr int kRandomLawFrames = 50;
constexpr int kRandomRsrInstances = 1000;
constexpr int kContainmentFrames = 20;
constexpr std::uint64_t kCompareSamples = 10'000;
constexpr std::uint64_t kExhaustiveLimit = 100'000;
constexpr int kReflexiveFrames = 10;
constexpr int kPreservationPairs = 1000;
constexpr int kMorphismInstances = 200;
constexpr std::size_t kMaxListed = 16;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    problems.push_back(what);
  }
};

// The same frame families are reused by several criteria.
struct Corpus {
  std::vector<Frame> law_frames;          // 16 one-atom + seeded two-atom
  std::vector<Frame> containment_frames;  // one-atom containment + seeded two-atom
  std::vector<Frame> reflexive_frames;    // seeded two-atom

  Corpus() {
    law_frames = all_one_atom_frames();
    std::mt19937_64 rng(kSeedTwoAtom);
    for (int i = 0; i < kRandomLawFrames; ++i) law_frames.push_back(random_set_frame(2, rng));
    containment_frames = all_one_atom_containment_frames();
    for (int i = 0; i < kContainmentFrames; ++i) containment_frames.push_back(random_containment_frame(2, rng));
    for (int i = 0; i < kReflexiveFrames; ++i) reflexive_frames.push_back(random_reflexive_frame(2, rng));
  }
};

std::string first_witness(const AuditReport& r) { return r.witnesses.empty() ? "" : r.witnesses.front(); }

// ---------------------------------------------------------------------------
// AC1

enum Named { Xb, Xbot, Bot, Xpm, Xmp, Top, kNamed };
constexpr std::array<const char*, kNamed> kNames = {"X_b", "X_bot", "bot_B", "X_pm", "X_mp", "top"};

// Reference values for the two-atom example. Rows are left sides 0, a+, b+,
// a+b+; columns right sides 0, a-, b-, a-b-.
constexpr int kPerp[4][4] = {
    {Bot, Xb, Xpm, Top}, {Xpm, Top, Xpm, Top}, {Xmp, Xmp, Top, Top}, {Top, Top, Top, Top}};
constexpr int kPerpPerp[4][4] = {
    {Xb, Bot, Xmp, Xbot}, {Xmp, Bot, Xmp, Xbot}, {Xpm, Xpm, Xbot, Xbot}, {Xbot, Xbot, Xbot, Xbot}};
constexpr int kJoin[6][6] = {{Xb, Xb, Xb, Top, Xb, Top},       {Xb, Xbot, Bot, Xpm, Xmp, Top},
                             {Xb, Bot, Bot, Xpm, Xb, Top},     {Top, Xpm, Xpm, Xpm, Top, Top},
                             {Xb, Xmp, Xb, Top, Xmp, Top},     {Top, Top, Top, Top, Top, Top}};
constexpr int kTensor[6][6] = {{Xb, Xbot, Bot, Xpm, Xmp, Top},       {Xbot, Xbot, Xbot, Xbot, Xbot, Xbot},
                               {Bot, Xbot, Bot, Xpm, Xbot, Xpm},     {Xpm, Xbot, Xpm, Xpm, Xbot, Xpm},
                               {Xmp, Xbot, Xbot, Xbot, Xmp, Xmp},    {Top, Xbot, Xpm, Xpm, Xmp, Top}};

Outcome ac1() {
  Outcome o;
  Model m(idempotent_example());
  const auto& sp = m.space();
  const auto& lat = m.lattice();
  const auto& q = m.ops();
  NamedA r(sp);
  const std::array<PositionSet, kNamed> named = {r.X_b, r.X_bot, r.bot_B, r.X_pm, r.X_mp, r.top};

  auto name_of = [&](const PositionSet& s) -> std::string {
    for (int i = 0; i < kNamed; ++i)
      if (named[i] == s) return kNames[i];
    if (s == r.Y) return "bot_B\\{0}";
    return "unnamed";
  };

  o.require(lat.size() == 6, "role count " + std::to_string(lat.size()) + " (expected 6)");
  for (int i = 0; i < kNamed; ++i)
    o.require(lat.find(named[i]).has_value(), std::string(kNames[i]) + " is not a role");

  const char* rows[4] = {"0", "a+", "b+", "a+b+"};
  const char* cols[4] = {"0", "a-", "b-", "a-b-"};
  for (unsigned left = 0; left < 4; ++left)
    for (unsigned right = 0; right < 4; ++right) {
      const PositionSet s = words(sp, {left | (right << 2)});
      const std::string cell = std::string("(") + rows[left] + "," + cols[right] + ")";
      const PositionSet p = rsr(sp, s), pp = closure(sp, s);
      o.require(p == named[kPerp[left][right]], "perp" + cell + " = " + name_of(p) + ", expected " +
                                                    kNames[kPerp[left][right]]);
      o.require(pp == named[kPerpPerp[left][right]], "perpperp" + cell + " = " + name_of(pp) + ", expected " +
                                                         kNames[kPerpPerp[left][right]]);
    }

  std::array<std::optional<RoleId>, kNamed> id;
  for (int i = 0; i < kNamed; ++i) id[i] = lat.find(named[i]);
  for (int i = 0; i < kNamed; ++i)
    for (int j = 0; j < kNamed; ++j) {
      if (!id[i] || !id[j]) continue;
      const std::string cell = std::string("(") + kNames[i] + "," + kNames[j] + ")";
      const PositionSet& join = lat.role(q.join(*id[i], *id[j]));
      const PositionSet& tensor = lat.role(q.tensor(*id[i], *id[j]));
      o.require(join == named[kJoin[i][j]], "join" + cell + " = " + name_of(join) + ", expected " +
                                                 kNames[kJoin[i][j]]);
      o.require(tensor == named[kTensor[i][j]], "tensor" + cell + " = " + name_of(tensor) + ", expected " +
                                                     kNames[kTensor[i][j]]);
    }

  const Content a = m.interpret_atom("a"), b = m.interpret_atom("b");
  o.require(lat.role(a.premisory) == r.X_mp, "[a]+ = " + name_of(lat.role(a.premisory)) + ", expected X_mp");
  o.require(lat.role(a.conclusory) == r.bot_B, "[a]- = " + name_of(lat.role(a.conclusory)) + ", expected bot_B");
  o.require(lat.role(b.premisory) == r.X_pm, "[b]+ = " + name_of(lat.role(b.premisory)) + ", expected X_pm");
  o.require(lat.role(b.conclusory) == r.X_mp, "[b]- = " + name_of(lat.role(b.conclusory)) + ", expected X_mp");

  const std::pair<const char*, bool> verdicts[] = {
      {"|- a", true}, {"a |- a, b", true}, {"a, b |- a /\\ b", true}, {"b |- a", false}};
  for (const auto& [text, expected] : verdicts)
    o.require(m.entails(parse_sequent(text), ClauseSet::classical) == expected,
              std::string("verdict ") + text);

  o.detail = std::to_string(lat.size()) + " roles";
  return o;
}

// ---------------------------------------------------------------------------
// AC2

Outcome ac2() {
  Outcome o;
  Model m(multiset_example(8));
  const auto& sp = m.space();
  auto at = [&](unsigned x, unsigned y) { return *sp.index_of(mn(x, y)); };
  auto set = [&](std::vector<Position> ps) { return sp.make_set(ps); };

  o.require(closure(sp, sp.singleton(at(1, 1))) == set({mn(0, 0), mn(1, 1)}), "11 closure");
  o.require(closure(sp, sp.singleton(at(1, 2))) == set({mn(0, 1), mn(1, 2)}), "12 closure");
  o.require(closure(sp, sp.singleton(at(0, 2))) == set({mn(0, 2)}), "02 closure");

  const Content p = m.interpret_atom("p");
  o.require(m.lattice().role(p.premisory) == set({mn(1, 0)}) && m.lattice().role(p.conclusory) == set({mn(0, 1)}),
            "[p] = <{10},{01}>");
  const Content lolli = m.eval(parse_formula("~p | p"), ClauseSet::linear);
  o.require(m.lattice().role(lolli.premisory).none() &&
                m.lattice().role(lolli.conclusory) == set({mn(0, 0), mn(1, 1)}),
            "[p -o p] = <{},{00,11}>");

  auto holds = [&](const char* s) { return m.entails(parse_sequent(s), ClauseSet::linear); };
  o.require(holds("|- p"), "|- p");
  o.require(holds("p |- p, p"), "p |- p, p");
  o.require(!holds("|- p, p"), "not |- p, p");
  o.require(!holds("p, p |- p"), "not p, p |- p");
  o.require(holds("p, ~p | p |- p"), "modus ponens");
  // Cutting p out of |- p and p |- p, p would give |- p, p.
  o.require(holds("|- p") && holds("p |- p, p") && !holds("|- p, p"), "transitivity failure");

  const auto changes = cap_stability(sp, 10);
  o.require(changes.empty(), std::to_string(changes.size()) + " cap-stability changes at cap 10");
  o.detail = std::to_string(sp.size()) + " window positions, " + std::to_string(m.lattice().size()) + " roles";
  return o;
}

// ---------------------------------------------------------------------------
// AC3

Outcome ac3(const Corpus& c) {
  Outcome o;
  const std::array<const char*, 6> laws = {"tensor associative",  "tensor commutative",
                                           "tensor unit",         "tensor distributes over join",
                                           "negation involutive", "meet De Morgan"};
  std::size_t cases = 0;
  for (std::size_t i = 0; i < c.law_frames.size(); ++i) {
    QuantaleOps q(role_lattice(std::make_shared<const PositionSpace>(c.law_frames[i])));
    auto report = check_gq_laws(q, {std::size_t{1} << 20, 0, 1});
    cases += report.cases;
    for (const auto& l : report.laws)
      for (const char* want : laws)
        if (l.law == want) o.require(l.holds, "frame " + std::to_string(i) + ": " + l.law);
  }
  o.detail = std::to_string(c.law_frames.size()) + " frames, " + std::to_string(cases) + " role triples";
  return o;
}

// ---------------------------------------------------------------------------
// AC4

Outcome ac4() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& f : all_one_atom_frames()) {
    PositionSpace sp(f);
    for (unsigned mask = 0; mask < (1U << sp.size()); ++mask) {
      PositionSet a = sp.empty_set();
      for (std::size_t i = 0; i < sp.size(); ++i)
        if ((mask >> i) & 1U) a.set(i);
      o.require(rsr(sp, a) == oracles::rsr_naive(f, sp.positions(), a),
                serialize_frame(f) + " subset " + std::to_string(mask));
      ++compared;
    }
  }
  std::mt19937_64 rng(kSeedTwoAtom + 4);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < kRandomRsrInstances; ++t) {
    Frame f = random_set_frame(2, rng);
    PositionSpace sp(f);
    PositionSet a = sp.empty_set();
    for (std::size_t i = 0; i < sp.size(); ++i)
      if (coin(rng)) a.set(i);
    o.require(rsr(sp, a) == oracles::rsr_naive(f, sp.positions(), a), "random instance " + std::to_string(t));
    ++compared;
  }
  o.detail = std::to_string(compared) + " (frame, subset) pairs";
  return o;
}

// ---------------------------------------------------------------------------
// AC5, AC7

Outcome ac5(const Corpus& c) {
  Outcome o;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < c.law_frames.size(); ++i) {
    auto r = audit_clause_agreement(Model(c.law_frames[i]));
    pairs += r.checked;
    o.require(r.ok(), "frame " + std::to_string(i) + ": " + first_witness(r));
  }
  o.detail = std::to_string(pairs) + " role pairs";
  return o;
}

Outcome ac7(const Corpus& c) {
  Outcome o;
  std::uint64_t checked = 0;
  auto run = [&](const Frame& f, const std::string& label) {
    auto r = audit_conservativity(Model(f));
    checked += r.checked;
    o.require(r.ok(), label + ": " + first_witness(r));
  };
  for (std::size_t i = 0; i < c.law_frames.size(); ++i) run(c.law_frames[i], "frame " + std::to_string(i));
  run(multiset_example(6), "multiset cap 6");
  o.detail = std::to_string(checked) + " atomic sequents";
  return o;
}

// ---------------------------------------------------------------------------
// AC6, AC8

AuditOptions depth_two() {
  AuditOptions opt;
  opt.depth = 2;
  opt.max_occurrences = 3;
  opt.exhaustive_limit = kExhaustiveLimit;
  opt.samples = kCompareSamples;
  opt.seed = kSeedTwoAtom;
  return opt;
}

Outcome ac6(const Corpus& c) {
  Outcome o;
  std::uint64_t checked = 0, sampled_frames = 0;
  for (std::size_t i = 0; i < c.containment_frames.size(); ++i) {
    auto r = compare_engines(Model(c.containment_frames[i]), depth_two());
    checked += r.checked;
    sampled_frames += r.sampled;
    o.require(r.ok(), "frame " + std::to_string(i) + ": " + first_witness(r));
  }
  o.detail = std::to_string(c.containment_frames.size()) + " frames (" + std::to_string(sampled_frames) +
             " sampled), " + std::to_string(checked) + " sequents";
  return o;
}

Outcome ac8(const Corpus& c) {
  Outcome o;
  std::uint64_t relevant = 0, robbins = 0;
  for (std::size_t i = 0; i < c.containment_frames.size(); ++i) {
    Model m(c.containment_frames[i]);
    auto s = audit_supraclassical(m, depth_two());
    relevant += s.relevant;
    o.require(s.ok(), "frame " + std::to_string(i) + ": " + first_witness(s));
    auto r = audit_robbins(m, 2);
    robbins += r.checked;
    o.require(r.ok(), "frame " + std::to_string(i) + " Robbins: " + first_witness(r));
  }
  o.detail = std::to_string(relevant) + " classically valid sequents, " + std::to_string(robbins) +
             " Robbins instances";
  return o;
}

// ---------------------------------------------------------------------------
// AC9

Outcome ac9(const Corpus& c) {
  Outcome o;
  std::vector<std::pair<Frame, std::string>> frames{{idempotent_example(), "idempotent example"},
                                                    {multiset_example(6), "multiset cap 6"}};
  for (std::size_t i = 0; i < c.reflexive_frames.size(); ++i)
    frames.emplace_back(c.reflexive_frames[i], "reflexive frame " + std::to_string(i));
  std::uint64_t proved = 0;
  for (const auto& [f, label] : frames) {
    auto r = audit_supralinear(Model(f), depth_two());
    proved += r.relevant;
    o.require(r.ok(), label + ": " + first_witness(r));
  }
  o.detail = std::to_string(frames.size()) + " frames, " + std::to_string(proved) + " MALL-provable sequents";
  return o;
}

// ---------------------------------------------------------------------------
// AC10

Outcome ac10(const Corpus& c) {
  Outcome o;
  std::mt19937_64 rng(kSeedTwoAtom + 10);
  std::deque<Model> reflexive;
  reflexive.emplace_back(idempotent_example());
  for (const auto& f : c.reflexive_frames) reflexive.emplace_back(f);
  for (int k = 0; k < kPreservationPairs; ++k) {
    const Model& m = reflexive[k % reflexive.size()];
    Content x = random_reflexive_content(m, rng), y = random_reflexive_content(m, rng);
    o.require(twisted_preserves_reflexivity(m, x, y), "twisted pair " + std::to_string(k));
  }

  std::vector<std::pair<const Model*, std::vector<Content>>> pools;
  std::deque<Model> containment;
  for (const auto& f : c.containment_frames) containment.emplace_back(f);
  for (const auto& m : containment) {
    auto cs = containment_contents(m);
    if (!cs.empty()) pools.emplace_back(&m, std::move(cs));
  }
  o.require(!pools.empty(), "no containment contents");
  int mixed = 0;
  for (int k = 0; k < kPreservationPairs && !pools.empty(); ++k) {
    const auto& [m, cs] = pools[k % pools.size()];
    const Content x = cs[rng() % cs.size()], y = cs[rng() % cs.size()];
    o.require(mixed_preserves_containment(*m, x, y), "mixed pair " + std::to_string(k));
    ++mixed;
  }
  o.detail = std::to_string(kPreservationPairs) + " twisted pairs, " + std::to_string(mixed) + " mixed pairs";
  return o;
}

// ---------------------------------------------------------------------------
// AC11

Outcome ac11() {
  Outcome o;
  std::size_t compared = 0, continuous = 0;
  auto compare = [&](const FrameMorphism& m, const std::string& label) {
    const bool three = static_cast<bool>(check_continuity_closed_preimages(m));
    continuous += three;
    o.require(three == oracles::continuity_condition4(m), label);
    ++compared;
  };
  const auto frames = all_one_atom_frames();
  for (std::size_t s = 0; s < frames.size(); ++s)
    for (std::size_t t = 0; t < frames.size(); ++t)
      compare(FrameMorphism(frames[s], frames[t], {0}), "one-atom pair " + std::to_string(s) + "," + std::to_string(t));
  std::mt19937_64 rng(kSeedTwoAtom + 11);
  std::uniform_int_distribution<std::size_t> atom(0, 1);
  for (int i = 0; i < kMorphismInstances; ++i) {
    Frame s = random_set_frame(2, rng), t = random_set_frame(2, rng);
    compare(FrameMorphism(s, t, {atom(rng), atom(rng)}), "two-atom instance " + std::to_string(i));
  }
  o.detail = std::to_string(compared) + " maps, " + std::to_string(continuous) + " continuous";
  return o;
}

// ---------------------------------------------------------------------------

bool report(int n, const char* title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.problems.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs > limit) {
    o.pass = false;
    std::ostringstream s;
    s << "time " << secs << " s over limit " << limit << " s";
    o.problems.push_back(s.str());
  }
  std::printf("[%s] AC%d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", n, title, secs, o.detail.c_str());
  if (!o.pass) {
    std::printf("      %zu problem(s)\n", o.problems.size());
    for (std::size_t i = 0; i < o.problems.size() && i < kMaxListed; ++i)
      std::printf("      - %s\n", o.problems[i].c_str());
    if (o.problems.size() > kMaxListed) std::printf("      - ...\n");
  }
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main() {
  const Corpus corpus;
  bool all = true;
  all &= report(1, "two-atom idempotent example, expected values", kLimitAC1, ac1);
  all &= report(2, "one-atom multiset example at cap 8", kLimitAC2, ac2);
  all &= report(3, "Girard quantale laws", kLimitAC3, [&] { return ac3(corpus); });
  all &= report(4, "rsr against the naive oracle", 0, ac4);
  all &= report(5, "clause agreement", 0, [&] { return ac5(corpus); });
  all &= report(6, "NMMS against semantic entailment", kLimitAC6, [&] { return ac6(corpus); });
  all &= report(7, "conservativity of the atom interpretation", 0, [&] { return ac7(corpus); });
  all &= report(8, "supraclassicality and Robbins", 0, [&] { return ac8(corpus); });
  all &= report(9, "supralinearity", 0, [&] { return ac9(corpus); });
  all &= report(10, "twisted and mixed preservation", 0, [&] { return ac10(corpus); });
  all &= report(11, "continuity condition (3) against (4)", 0, ac11);
  return all ? 0 : 1;
}
