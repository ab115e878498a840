#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "roleforge/audit.hpp"
#include "roleforge/nmms.hpp"
#include "roleforge/quantale.hpp"
#include "roleforge/semantics.hpp"

#ifndef ROLEFORGE_VERSION
#define ROLEFORGE_VERSION "unknown"
#endif

namespace roleforge::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { plain, markdown, csv, json, dot };

struct Options {
  Format format = Format::plain;
  std::uint64_t seed = 1;
  bool cap_stability = false;
  std::string labels;
  unsigned depth = 1;
  std::optional<unsigned> cap;
  std::string variant;
  std::string clauses;
  std::string map;
  std::string frame;
  std::string target;
  std::string text;
  std::string property;
  std::vector<std::string> positions;
};

// ---------------------------------------------------------------------------
// Report model: titled blocks of fields, an optional table and raw lines,
// rendered per format. JSON output is built separately from `result`.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Block {
  std::string title;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<Table> table;
  std::vector<std::string> lines;
};

struct Report {
  std::string kind;
  std::vector<Block> blocks;
  Json result = Json::object();
  std::vector<std::string> witnesses;
  std::optional<std::string> dot;
  int exit = kOk;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

// Display width, counting UTF-8 continuation bytes as zero.
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void render_table(std::ostream& out, const Table& t, Format f) {
  if (f == Format::csv) {
    auto row = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
      out << "\n";
    };
    row(t.header);
    for (const auto& r : t.rows) row(r);
    return;
  }
  if (f == Format::markdown) {
    auto row = [&](const std::vector<std::string>& r) {
      out << "|";
      for (const auto& c : r) out << " " << md_cell(c) << " |";
      out << "\n";
    };
    row(t.header);
    out << "|";
    for (std::size_t i = 0; i < t.header.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : t.rows) row(r);
    return;
  }
  std::vector<std::size_t> w(t.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], width(r[i]));
  };
  measure(t.header);
  for (const auto& r : t.rows) measure(r);
  auto row = [&](const std::vector<std::string>& r) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(w[i] - width(r[i]) + 2, ' ');
    }
    out << line << "\n";
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
}

void render_text(std::ostream& out, const Report& r, Format f) {
  bool first = true;
  for (const auto& b : r.blocks) {
    if (!first) out << "\n";
    first = false;
    if (f == Format::csv) {
      if (!b.fields.empty()) {
        Table t{{"field", "value"}, {}};
        for (const auto& [k, v] : b.fields) t.rows.push_back({k, v});
        render_table(out, t, f);
      }
      if (b.table) {
        if (!b.fields.empty()) out << "\n";
        render_table(out, *b.table, f);
      }
      for (const auto& l : b.lines) out << csv_cell(l) << "\n";
      continue;
    }
    if (!b.title.empty()) out << (f == Format::markdown ? "## " : "") << b.title << (f == Format::markdown ? "\n\n" : ":\n");
    for (const auto& [k, v] : b.fields) out << (f == Format::markdown ? "- " : "") << k << ": " << v << "\n";
    if (b.table) {
      if (!b.fields.empty() && f == Format::markdown) out << "\n";
      render_table(out, *b.table, f);
    }
    if (!b.lines.empty()) {
      if (f == Format::markdown) out << "```\n";
      for (const auto& l : b.lines) out << l << "\n";
      if (f == Format::markdown) out << "```\n";
    }
  }
}

// ---------------------------------------------------------------------------
// Loading and naming.

Frame load(const std::string& path, const Options& opt) {
  Frame f = load_frame(path);
  if (opt.cap) {
    if (f.mode() != Mode::multiset) throw DomainError("--cap applies to multiset frames only");
    f = f.with_cap(*opt.cap);
  }
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string position_list(const PositionSpace& sp, const PositionSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    out += first ? "" : "; ";
    out += format_position(sp.frame().atoms(), sp.position(i));
    first = false;
  });
  return out + "}";
}

std::string signed_list(const PositionSpace& sp, const PositionSet& s) {
  std::string out;
  s.for_each([&](std::size_t i) {
    out += out.empty() ? "" : " ";
    out += format_signed(sp.frame().atoms(), sp.position(i));
  });
  return out.empty() ? "-" : out;
}

Json position_array(const PositionSpace& sp, const PositionSet& s) {
  Json a = Json::array();
  s.for_each([&](std::size_t i) { a.push_back(format_position(sp.frame().atoms(), sp.position(i))); });
  return a;
}

// Role aliases: label file names where given, otherwise R<index> in lattice
// order.
class Aliases {
 public:
  Aliases(const RoleLattice& lat, const std::string& label_path) : names_(lat.size()) {
    for (std::size_t i = 0; i < lat.size(); ++i) names_[i] = "R" + std::to_string(i);
    if (label_path.empty()) return;
    labelled_ = true;
    std::vector<bool> taken(lat.size(), false);
    for (const auto& [name, set] : parse_labels(lat.space(), read_file(label_path))) {
      auto id = lat.find(set);
      if (!id) throw DomainError("label '" + name + "' does not denote a role");
      if (taken[id->value]) throw DomainError("label '" + name + "' names a role that already has an alias");
      taken[id->value] = true;
      names_[id->value] = name;
    }
  }

  const std::string& operator()(RoleId r) const { return names_[r.value]; }
  bool labelled() const { return labelled_; }

 private:
  std::vector<std::string> names_;
  bool labelled_ = false;
};

struct Loaded {
  std::string path;
  std::unique_ptr<Model> model;
  std::unique_ptr<Aliases> alias;

  Loaded(const Options& opt) : path(opt.frame) {
    model = std::make_unique<Model>(load(opt.frame, opt));
    alias = std::make_unique<Aliases>(model->lattice(), opt.labels);
  }
  const PositionSpace& sp() const { return model->space(); }
  const RoleLattice& lat() const { return model->lattice(); }

  std::string role_text(RoleId r) const {
    return alias->labelled() ? (*alias)(r) : position_list(sp(), lat().role(r));
  }
  std::string content_text(Content c) const {
    return "⟨" + role_text(c.premisory) + ", " + role_text(c.conclusory) + "⟩";
  }
  Json role_json(RoleId r) const {
    return Json{{"alias", (*alias)(r)}, {"positions", position_array(sp(), lat().role(r))}};
  }
  Json content_json(Content c) const {
    return Json{{"premisory", role_json(c.premisory)}, {"conclusory", role_json(c.conclusory)}};
  }
};

ClauseSet clauses_for(const Options& opt, Mode mode) {
  if (opt.clauses.empty()) return mode == Mode::set ? ClauseSet::classical : ClauseSet::linear;
  return opt.clauses == "classical" ? ClauseSet::classical : ClauseSet::linear;
}

Variant variant_for(const Options& opt, Mode mode) {
  if (opt.variant.empty()) return mode == Mode::set ? Variant::contractive : Variant::noncontractive;
  return opt.variant == "contractive" ? Variant::contractive : Variant::noncontractive;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Block stability_block(const PositionSpace& sp, Json& result) {
  if (sp.frame().mode() != Mode::multiset) throw DomainError("--cap-stability applies to multiset frames only");
  const unsigned wider = sp.frame().cap() + 2;
  auto changes = cap_stability(sp, wider);
  Block b{"cap stability", {{"wider cap", std::to_string(wider)}, {"changes", std::to_string(changes.size())}}, {}, {}};
  Json arr = Json::array();
  if (!changes.empty()) {
    Table t{{"position", "what"}, {}};
    for (const auto& c : changes) {
      const std::string p = format_position(sp.frame().atoms(), c.position);
      t.rows.push_back({p, c.what});
      arr.push_back(Json{{"position", p}, {"what", c.what}});
    }
    b.table = std::move(t);
  }
  result["cap_stability"] = Json{{"wider_cap", wider}, {"changes", arr}};
  return b;
}

// ---------------------------------------------------------------------------
// Commands.

Report cmd_validate(const Options& opt) {
  Frame f = load(opt.frame, opt);
  PositionSpace sp(f);
  std::size_t incoherent = 0;
  for (std::size_t i = 0; i < sp.size(); ++i) incoherent += sp.incoherent(i);
  const auto refl = is_reflexive(f);
  std::optional<Verdict<Position>> cont;
  if (f.mode() == Mode::set) cont = is_containment(f);
  std::string gens;
  for (Generator g : {Generator::diagonal, Generator::containment, Generator::reflexivity})
    if (f.generators().contains(g)) gens += (gens.empty() ? "" : " ") + std::string(generator_name(g));

  std::string atoms;
  for (const auto& a : f.atoms().names()) atoms += (atoms.empty() ? "" : " ") + a;
  Report r{"validate", {}, {}, {}, {}, kOk};
  Block b{"", {{"atoms", atoms},
               {"mode", f.mode() == Mode::set ? "set" : "multiset"},
               {"cap", std::to_string(f.cap())},
               {"window positions", std::to_string(sp.size())},
               {"incoherent in window", std::to_string(incoherent)},
               {"explicit positions", std::to_string(f.explicit_positions().size())},
               {"generators", gens.empty() ? "-" : gens},
               {"reflexive", yes_no(refl.holds)}},
          {}, {}};
  if (!refl.holds) b.fields.push_back({"non-reflexive atom", f.atoms().name(*refl.witness)});
  b.fields.push_back({"containment", cont ? yes_no(cont->holds) : "n/a"});
  if (cont && !cont->holds) b.fields.push_back({"containment witness", format_position(f.atoms(), *cont->witness)});
  r.blocks.push_back(std::move(b));
  r.result = Json{{"atoms", f.atoms().names()},
                  {"mode", f.mode() == Mode::set ? "set" : "multiset"},
                  {"window_positions", sp.size()},
                  {"incoherent_in_window", incoherent},
                  {"reflexive", refl.holds},
                  {"containment", cont ? Json(cont->holds) : Json(nullptr)}};
  return r;
}

Report cmd_positions(const Options& opt) {
  Frame f = load(opt.frame, opt);
  PositionSpace sp(f);
  Report r{"positions", {}, {}, {}, {}, kOk};
  Table t{{"index", "position", "signed", "incoherent"}, {}};
  Json arr = Json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const std::string p = format_position(f.atoms(), sp.position(i));
    t.rows.push_back({std::to_string(i), p, format_signed(f.atoms(), sp.position(i)), yes_no(sp.incoherent(i))});
    arr.push_back(Json{{"position", p}, {"incoherent", sp.incoherent(i)}});
  }
  r.blocks.push_back(Block{"", {{"window positions", std::to_string(sp.size())}}, std::move(t), {}});
  r.result = Json{{"positions", arr}};
  return r;
}

Report cmd_rsr(const Options& opt) {
  Loaded l(opt);
  const auto& sp = l.sp();
  std::vector<Position> ps;
  for (const auto& text : opt.positions) {
    Position p = parse_position(sp.frame().atoms(), sp.frame().mode(), text);
    if (!sp.index_of(p)) throw DomainError("position '" + text + "' lies outside the window");
    ps.push_back(p);
  }
  const PositionSet a = sp.make_set(ps);
  const PositionSet perp = rsr(sp, a), perpperp = closure(sp, a);
  const RoleId perp_id = *l.lat().find(perp), cl_id = *l.lat().find(perpperp);
  Report r{"rsr", {}, {}, {}, {}, kOk};
  r.blocks.push_back(Block{"",
                           {{"input", position_list(sp, a)},
                            {"rsr", position_list(sp, perp)},
                            {"rsr alias", (*l.alias)(perp_id)},
                            {"closure", position_list(sp, perpperp)},
                            {"closure alias", (*l.alias)(cl_id)},
                            {"window-relative", yes_no(sp.window_relative())}},
                           {}, {}});
  r.result = Json{{"input", position_array(sp, a)}, {"rsr", l.role_json(perp_id)}, {"closure", l.role_json(cl_id)}};
  if (opt.cap_stability) r.blocks.push_back(stability_block(sp, r.result));
  return r;
}

std::string hasse_dot(const Loaded& l) {
  const auto& lat = l.lat();
  const std::size_t n = lat.size();
  std::ostringstream out;
  out << "digraph roles {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < n; ++i) {
    const RoleId r{static_cast<std::int32_t>(i)};
    out << "  r" << i << " [label=\"" << (*l.alias)(r) << "\\n" << lat.role(r).count() << "\"];\n";
  }
  auto lt = [&](std::size_t a, std::size_t b) {
    return a != b && lat.leq(RoleId{static_cast<std::int32_t>(a)}, RoleId{static_cast<std::int32_t>(b)});
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool covers = true;
      for (std::size_t c = 0; c < n && covers; ++c) covers = !(lt(a, c) && lt(c, b));
      if (covers) out << "  r" << a << " -> r" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

Report cmd_lattice(const Options& opt) {
  Loaded l(opt);
  const auto& lat = l.lat();
  const auto& q = l.model->ops();
  const auto& alias = *l.alias;
  const std::size_t n = lat.size();
  auto id = [](std::size_t i) { return RoleId{static_cast<std::int32_t>(i)}; };

  Report r{"lattice", {}, {}, {}, {}, kOk};
  r.blocks.push_back(Block{"",
                           {{"roles", std::to_string(n)},
                            {"top", alias(lat.top())},
                            {"bottom", alias(lat.bottom())},
                            {"unit", alias(lat.unit())},
                            {"dualizer", alias(lat.dualizer())},
                            {"bottom absorbing", yes_no(q.bottom_absorbing())},
                            {"window-relative", yes_no(lat.space().window_relative())}},
                           {}, {}});
  Table roles{{"alias", "size", "neg", "idempotent", "positions"}, {}};
  Json rj = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    roles.rows.push_back({alias(id(i)), std::to_string(lat.role(id(i)).count()), alias(q.neg(id(i))),
                          yes_no(q.is_idempotent(id(i))), signed_list(l.sp(), lat.role(id(i)))});
    Json e = l.role_json(id(i));
    e["neg"] = alias(q.neg(id(i)));
    e["idempotent"] = q.is_idempotent(id(i));
    rj.push_back(e);
  }
  r.blocks.push_back(Block{"roles", {}, std::move(roles), {}});

  auto op_table = [&](const char* name, auto&& op) {
    Table t{{name}, {}};
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) t.header.push_back(alias(id(i)));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> row{alias(id(i))};
      Json jr = Json::array();
      for (std::size_t j = 0; j < n; ++j) {
        row.push_back(alias(op(id(i), id(j))));
        jr.push_back(row.back());
      }
      t.rows.push_back(std::move(row));
      rows.push_back(std::move(jr));
    }
    r.blocks.push_back(Block{name, {}, std::move(t), {}});
    return rows;
  };
  Json join = op_table("join", [&](RoleId a, RoleId b) { return q.join(a, b); });
  Json tensor = op_table("tensor", [&](RoleId a, RoleId b) { return q.tensor(a, b); });

  r.result = Json{{"roles", rj},
                  {"top", alias(lat.top())},
                  {"bottom", alias(lat.bottom())},
                  {"unit", alias(lat.unit())},
                  {"dualizer", alias(lat.dualizer())},
                  {"join", join},
                  {"tensor", tensor}};
  if (opt.cap_stability) r.blocks.push_back(stability_block(l.sp(), r.result));
  r.dot = hasse_dot(l);
  return r;
}

Report cmd_interp(const Options& opt) {
  Loaded l(opt);
  const auto& atoms = l.sp().frame().atoms();
  Report r{"interp", {}, {}, {}, {}, kOk};
  Table t{{"atom", "premisory", "conclusory"}, {}};
  Json arr = Json::array();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Content c = l.model->interpret_atom(i);
    t.rows.push_back({atoms.name(i), l.role_text(c.premisory), l.role_text(c.conclusory)});
    Json e = l.content_json(c);
    e["atom"] = atoms.name(i);
    arr.push_back(e);
  }
  r.blocks.push_back(Block{"", {}, std::move(t), {}});
  r.result = Json{{"atoms", arr}};
  return r;
}

Report cmd_eval(const Options& opt) {
  Loaded l(opt);
  const ClauseSet cs = clauses_for(opt, l.sp().frame().mode());
  FormulaPtr f = parse_formula(opt.text);
  const Content c = l.model->eval(f, cs);
  Report r{"eval", {}, {}, {}, {}, kOk};
  Block b{"",
          {{"formula", to_string(*f)},
           {"clauses", std::string(clause_set_name(cs))},
           {"content", l.content_text(c)},
           {"premisory alias", (*l.alias)(c.premisory)},
           {"conclusory alias", (*l.alias)(c.conclusory)},
           {"reflexive", yes_no(l.model->is_reflexive_content(c))},
           {"idempotent", yes_no(l.model->is_idempotent_content(c))}},
          {}, {}};
  r.result = l.content_json(c);
  r.result["formula"] = to_string(*f);
  r.result["clauses"] = std::string(clause_set_name(cs));
  r.blocks.push_back(std::move(b));
  return r;
}

Report verdict_report(const char* kind, const std::string& sequent, const std::string& how, bool verdict) {
  Report r{kind, {}, {}, {}, {}, verdict ? kOk : kFalse};
  r.blocks.push_back(Block{"", {{"sequent", sequent}, {kind == std::string("entails") ? "clauses" : "variant", how},
                                {"verdict", verdict ? "true" : "false"}}, {}, {}});
  r.result = Json{{"sequent", sequent}, {kind == std::string("entails") ? "clauses" : "variant", how},
                  {"verdict", verdict}};
  return r;
}

Report cmd_entails(const Options& opt) {
  Loaded l(opt);
  const ClauseSet cs = clauses_for(opt, l.sp().frame().mode());
  FormulaSequent s = parse_sequent(opt.text);
  return verdict_report("entails", to_string(s), std::string(clause_set_name(cs)), l.model->entails(s, cs));
}

Report cmd_nmms(const Options& opt) {
  Frame f = load(opt.frame, opt);
  const Variant v = variant_for(opt, f.mode());
  FormulaSequent s = parse_sequent(opt.text);
  return verdict_report("nmms", to_string(s), std::string(variant_name(v)), decide(f, s, v));
}

Json trace_json(const TraceNode& t) {
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(trace_json(c));
  return Json{{"sequent", to_string(t.sequent)}, {"rule", t.rule}, {"verdict", t.verdict}, {"children", children}};
}

Report cmd_trace(const Options& opt) {
  Frame f = load(opt.frame, opt);
  const Variant v = variant_for(opt, f.mode());
  const TraceNode t = reduction_trace(f, parse_sequent(opt.text), v);
  Report r{"trace", {}, {}, {}, {}, t.verdict ? kOk : kFalse};
  Block b{"", {{"variant", std::string(variant_name(v))}, {"verdict", t.verdict ? "true" : "false"}}, {}, {}};
  std::istringstream lines(format_trace(t));
  for (std::string line; std::getline(lines, line);) b.lines.push_back(line);
  r.blocks.push_back(std::move(b));
  r.result = trace_json(t);
  return r;
}

AuditOptions audit_options(const Options& opt) {
  AuditOptions a;
  a.depth = opt.depth;
  a.seed = opt.seed;
  return a;
}

Report audit_report(const char* kind, const AuditReport& a) {
  Report r{kind, {}, {}, a.witnesses, {}, a.ok() ? kOk : kPropertyFailure};
  r.blocks.push_back(Block{"",
                           {{"property", a.property},
                            {"checked", std::to_string(a.checked)},
                            {"relevant", std::to_string(a.relevant)},
                            {"violations", std::to_string(a.violations)},
                            {"sampled", yes_no(a.sampled)},
                            {"holds", yes_no(a.ok())}},
                           {}, a.witnesses});
  r.result = Json{{"property", a.property}, {"checked", a.checked},     {"relevant", a.relevant},
                  {"violations", a.violations}, {"sampled", a.sampled}, {"holds", a.ok()}};
  return r;
}

Report cmd_check(const Options& opt) {
  const std::string& p = opt.property;
  if (p == "reflexive" || p == "containment") {
    Frame f = load(opt.frame, opt);
    AuditReport a;
    a.property = p;
    a.checked = 1;
    if (p == "reflexive") {
      auto v = is_reflexive(f);
      if (!v.holds) a.violation("atom " + f.atoms().name(*v.witness) + " lacks its identity position", 5);
    } else {
      auto v = is_containment(f);
      if (!v.holds) a.violation("coherent overlapping position " + format_position(f.atoms(), *v.witness), 5);
    }
    return audit_report("check", a);
  }
  Loaded l(opt);
  const Model& m = *l.model;
  if (p == "gq-laws") {
    auto laws = check_gq_laws(m.ops(), {64, 1000, opt.seed});
    AuditReport a;
    a.property = "gq-laws";
    a.checked = laws.cases;
    a.sampled = laws.sampled;
    for (const auto& law : laws.laws) {
      if (law.holds) continue;
      std::string w = law.law + " fails at";
      for (auto x : law.counterexample) w += " " + (*l.alias)(x);
      a.violation(w, laws.laws.size());
    }
    Report r = audit_report("check", a);
    Table t{{"law", "holds"}, {}};
    Json arr = Json::array();
    for (const auto& law : laws.laws) {
      t.rows.push_back({law.law, yes_no(law.holds)});
      arr.push_back(Json{{"law", law.law}, {"holds", law.holds}});
    }
    r.blocks.push_back(Block{"laws", {}, std::move(t), {}});
    r.result["laws"] = arr;
    return r;
  }
  if (p == "conservativity") return audit_report("check", audit_conservativity(m));
  if (p == "supraclassical") return audit_report("check", audit_supraclassical(m, audit_options(opt)));
  if (p == "supralinear") return audit_report("check", audit_supralinear(m, audit_options(opt)));
  if (p == "clause-agreement") return audit_report("check", audit_clause_agreement(m));
  throw DomainError("unknown property '" + p + "'");
}

Report cmd_compare(const Options& opt) {
  Loaded l(opt);
  if (!opt.clauses.empty() && opt.clauses != "classical")
    throw DomainError("compare supports classical clauses only");
  if (!opt.variant.empty() && opt.variant != "contractive")
    throw DomainError("compare supports the contractive variant only");
  Report r = audit_report("compare", compare_engines(*l.model, audit_options(opt)));
  r.result["depth"] = opt.depth;
  return r;
}

Report cmd_morphism(const Options& opt) {
  Frame s = load(opt.frame, opt), t = load(opt.target, opt);
  FrameMorphism m = parse_morphism(s, t, opt.map);
  Report r{"morphism", {}, {}, {}, {}, kOk};
  Block b{"", {}, {}, {}};
  auto add = [&](const char* name, const Verdict<MorphismWitness>& v) {
    b.fields.push_back({name, yes_no(v.holds)});
    r.result[name] = v.holds;
    if (!v.holds && v.witness) {
      std::string w = std::string(name) + ": " + format_position(s.atoms(), v.witness->source_position);
      if (v.witness->target_position) w += " -> " + format_position(t.atoms(), *v.witness->target_position);
      if (!v.witness->reason.empty()) w += " (" + v.witness->reason + ")";
      r.witnesses.push_back(w);
    }
  };
  add("conservative", check_conservative(m));
  add("bot-preserving", check_bot_preserving(m));
  const auto cont = check_continuous(m);
  add("continuous", cont);
  b.lines = r.witnesses;
  r.blocks.push_back(std::move(b));
  r.exit = cont.holds ? kOk : kFalse;
  return r;
}

void emit(std::ostream& out, const Report& r, const Options& opt, const std::optional<unsigned>& cap) {
  if (opt.format == Format::json) {
    Json doc{{"kind", r.kind},
             {"frame", opt.frame},
             {"result", r.result},
             {"witnesses", r.witnesses},
             {"meta", Json{{"seed", opt.seed}, {"cap", cap ? Json(*cap) : Json(nullptr)}, {"version", ROLEFORGE_VERSION}}}};
    out << doc.dump(2) << "\n";
    return;
  }
  if (opt.format == Format::dot) {
    if (!r.dot) throw DomainError("dot output is only available for lattice");
    out << *r.dot;
    return;
  }
  render_text(out, r, opt.format);
}

}  // namespace

std::vector<std::pair<std::string, PositionSet>> parse_labels(const PositionSpace& space, std::string_view text) {
  std::vector<std::pair<std::string, PositionSet>> out;
  const Frame& f = space.frame();
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'alias = rsr ...'", line_no, 1);
    const std::string name = trim(line.substr(0, eq));
    if (!AtomTable::valid_identifier(name)) throw ParseError("invalid alias '" + name + "'", line_no, 1);
    for (const auto& [seen, _] : out)
      if (seen == name) throw ParseError("duplicate alias '" + name + "'", line_no, 1);
    std::string rest = trim(line.substr(eq + 1));
    const bool is_rsr = rest.rfind("rsr", 0) == 0;
    const bool is_closure = rest.rfind("closure", 0) == 0;
    if (!is_rsr && !is_closure) throw ParseError("expected 'rsr' or 'closure'", line_no, eq + 2);
    rest = rest.substr(is_rsr ? 3 : 7);
    PositionSet a = space.empty_set();
    std::size_t from = 0;
    while (!trim(rest).empty() && from <= rest.size()) {
      std::size_t semi = rest.find(';', from);
      if (semi == std::string::npos) semi = rest.size();
      const std::string item = trim(rest.substr(from, semi - from));
      from = semi + 1;
      Position p;
      try {
        p = parse_position(f.atoms(), f.mode(), item);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no, e.column());
      }
      auto idx = space.index_of(p);
      if (!idx) throw ParseError("position '" + item + "' lies outside the window", line_no, 1);
      a.set(*idx);
      if (semi == rest.size()) break;
    }
    out.emplace_back(name, is_rsr ? rsr(space, a) : closure(space, a));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Implication-space semantics and NMMS tooling", "roleforge"};
  app.require_subcommand(1);
  Options opt;
  std::string format = "plain";
  const std::map<std::string, Format> formats{{"plain", Format::plain},
                                              {"markdown", Format::markdown},
                                              {"csv", Format::csv},
                                              {"json", Format::json},
                                              {"dot", Format::dot}};

  auto common = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "markdown", "csv", "json", "dot"}));
    c->add_option("--seed", opt.seed, "Seed for sampled suites");
    c->add_option("--cap", opt.cap, "Degree cap override for multiset frames")->check(CLI::Range(1u, 64u));
    c->add_option("--labels", opt.labels, "Role alias file");
  };
  auto with_frame = [&](CLI::App* c) { c->add_option("frame", opt.frame, "Frame file")->required(); };
  auto with_text = [&](CLI::App* c, const char* what) { c->add_option("text", opt.text, what)->required(); };
  auto with_clauses = [&](CLI::App* c) {
    c->add_option("--clauses", opt.clauses, "Clause set")->check(CLI::IsMember({"classical", "linear"}));
  };
  auto with_variant = [&](CLI::App* c) {
    c->add_option("--variant", opt.variant, "NMMS variant")->check(CLI::IsMember({"contractive", "noncontractive"}));
  };
  auto with_depth = [&](CLI::App* c) { c->add_option("--depth", opt.depth, "Formula depth")->check(CLI::Range(0u, 4u)); };

  std::map<CLI::App*, std::function<Report(const Options&)>> commands;
  auto add = [&](const char* name, const char* help, std::function<Report(const Options&)> fn) {
    CLI::App* c = app.add_subcommand(name, help);
    common(c);
    commands[c] = std::move(fn);
    return c;
  };

  with_frame(add("validate", "Parse a frame and report its properties", cmd_validate));
  with_frame(add("positions", "List window positions", cmd_positions));
  {
    auto* c = add("rsr", "rsr and closure of a set of positions", cmd_rsr);
    with_frame(c);
    c->add_option("positions", opt.positions, "Positions in frame syntax");
    c->add_flag("--cap-stability", opt.cap_stability, "Recompute at cap + 2 and compare");
  }
  {
    auto* c = add("lattice", "Role lattice with join and tensor tables", cmd_lattice);
    with_frame(c);
    c->add_flag("--cap-stability", opt.cap_stability, "Recompute at cap + 2 and compare");
  }
  with_frame(add("interp", "Contents of the atoms", cmd_interp));
  {
    auto* c = add("eval", "Content of a formula", cmd_eval);
    with_frame(c);
    with_text(c, "Formula");
    with_clauses(c);
  }
  {
    auto* c = add("entails", "Semantic entailment of a sequent", cmd_entails);
    with_frame(c);
    with_text(c, "Sequent");
    with_clauses(c);
  }
  for (auto [name, fn] : {std::pair{"nmms", cmd_nmms}, std::pair{"trace", cmd_trace}}) {
    auto* c = add(name, name == std::string("nmms") ? "NMMS derivability of a sequent" : "NMMS reduction tree", fn);
    with_frame(c);
    with_text(c, "Sequent");
    with_variant(c);
  }
  {
    auto* c = add("check", "Run a property suite", cmd_check);
    with_frame(c);
    c->add_option("property", opt.property, "Property")
        ->required()
        ->check(CLI::IsMember({"gq-laws", "reflexive", "containment", "conservativity", "supraclassical",
                               "supralinear", "clause-agreement"}));
    with_depth(c);
  }
  {
    auto* c = add("compare", "NMMS against semantic entailment", cmd_compare);
    with_frame(c);
    with_depth(c);
    with_clauses(c);
    with_variant(c);
  }
  {
    auto* c = add("morphism", "Check an atom map between two frames", cmd_morphism);
    with_frame(c);
    c->add_option("target", opt.target, "Target frame file")->required();
    c->add_option("--map", opt.map, "Atom map such as \"a=b, b=a\"")->required();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  opt.format = formats.at(format);
  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      Report r = fn(opt);
      std::optional<unsigned> cap;
      if (!opt.frame.empty()) {
        if (opt.cap) {
          cap = opt.cap;
        } else if (Frame f = load_frame(opt.frame); f.mode() == Mode::multiset) {
          cap = f.cap();
        }
      }
      emit(out, r, opt, cap);
      return r.exit;
    } catch (const Error& e) {
      err << "roleforge: " << e.what() << "\n";
      return kUsage;
    }
  }
  return kUsage;
}

}  // namespace roleforge::cli
