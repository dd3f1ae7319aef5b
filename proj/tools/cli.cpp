#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "chordal/hopf.hpp"
#include "chordal/modular.hpp"
#include "chordal/parallel.hpp"
#include "chordal/relations.hpp"
#include "chordal/weights.hpp"
#include "emit.hpp"

namespace chordal::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  std::string output;
  int jobs = 1;
  std::string config;

  std::string space;
  std::string kind;
  std::string suite;
  std::string algebra = "sl2";
  std::string mode = "scalar";
  std::vector<std::string> diagrams;
  int degree = -1;
  int legs = -1;
  int grade = -1;
  int max_grade = -1;
  int rep = -1;
  int k_max = -1;
  int n_max = -1;
  int p_max = -1;
  bool include_degenerate = false;
};

// Keys accepted in a --config file; each maps to the flag of the same name.
const std::set<std::string> kConfigKeys = {"format", "output", "jobs",   "degree", "legs",
                                           "grade",  "max-grade", "k-max", "n-max", "p-max",
                                           "algebra", "rep",   "mode",   "space",  "suite", "kind"};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (!kConfigKeys.count(key)) throw UsageError(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Json meta(const std::string& command) {
  Json m = Json::object();
  m["tool"] = "chordal";
  m["version"] = kVersion;
  m["command"] = command;
  return m;
}

std::string q(const Scalar& s) { return s.get_str(); }

Json checks_json(const SuiteReport& r) {
  Json a = Json::array();
  for (const auto& c : r.checks) {
    Json o = Json::object();
    o["name"] = c.name;
    o["pass"] = c.pass;
    o["checked"] = c.checked;
    o["witness"] = c.witness;
    a.push_back(std::move(o));
  }
  return a;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw UsageError(msg);
}

// Diagram text: a chord word, or a Jacobi record (contains ';'), or a file
// holding either.
std::string diagram_text(const std::string& arg) {
  std::error_code ec;
  if (arg.find(';') == std::string::npos && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
  }
  return arg;
}

bool is_record(const std::string& text) { return text.find(';') != std::string::npos; }

JacobiDiagram closed_diagram(const std::string& text) {
  if (is_record(text)) {
    JacobiDiagram d = parse_jacobi(text);
    require(d.kind == DiagramKind::closed, "expected a closed diagram");
    return d;
  }
  return chord_to_jacobi(ChordDiagram::parse(text));
}

struct Term {
  Scalar coefficient = 1;
  std::string diagram;
};

Term parse_term(const std::string& arg) {
  Term t;
  const auto star = arg.find('*');
  if (star == std::string::npos) {
    t.diagram = diagram_text(arg);
  } else {
    t.coefficient = parse_scalar(arg.substr(0, star));
    t.diagram = diagram_text(arg.substr(star + 1));
  }
  return t;
}

// ---------------------------------------------------------------------------

Report cmd_dims(const Options& o) {
  require(o.degree >= 0, "--degree is required");
  const SpaceKind kind = parse_space_kind(o.space);
  std::optional<int> legs;
  if (o.legs >= 0) legs = o.legs;
  require(kind != SpaceKind::M || legs, "space M needs --legs");
  const SpaceSummary s = build_space(kind, o.degree, legs);
  Report r;
  r.table = "basis";
  r.doc["meta"] = meta("dims");
  r.doc["space"] = to_string(kind);
  r.doc["degree"] = o.degree;
  if (legs) r.doc["legs"] = *legs;
  r.doc["ambient"] = s.ambient;
  r.doc["rank"] = s.rank;
  r.doc["dimension"] = s.dimension;
  Json basis = Json::array();
  for (std::size_t i = 0; i < s.basis.size(); ++i) basis.push_back({{"index", i}, {"diagram", s.basis[i]}});
  r.doc["basis"] = basis;
  return r;
}

Report cmd_enumerate(const Options& o) {
  require(o.degree >= 0, "--order is required");
  Report r;
  r.table = "diagrams";
  r.doc["meta"] = meta("enumerate");
  r.doc["kind"] = o.kind;
  r.doc["order"] = o.degree;
  Json list = Json::array();
  if (o.kind == "chord") {
    for (const auto& c : enumerate_chords(o.degree))
      list.push_back({{"index", list.size()}, {"diagram", c.str()}, {"degenerate", false}});
  } else {
    const DiagramKind kind = parse_kind(o.kind);
    std::optional<int> legs;
    if (o.legs >= 0) legs = o.legs;
    require(kind == DiagramKind::closed || kind == DiagramKind::vacuum || legs,
            "open and labeled diagrams need --legs");
    if (legs) r.doc["legs"] = *legs;
    for (const auto& d : enumerate_jacobi(kind, o.degree, legs, o.include_degenerate))
      list.push_back({{"index", list.size()},
                      {"diagram", format_jacobi(d)},
                      {"degenerate", canonical_form(d).degenerate}});
  }
  r.doc["count"] = list.size();
  r.doc["diagrams"] = list;
  return r;
}

Report cmd_reduce(const Options& o) {
  require(o.degree >= 0, "--degree is required");
  require(!o.diagrams.empty(), "at least one --diagram is required");
  const SpaceKind kind = parse_space_kind(o.space);
  Report r;
  r.table = "coordinates";
  r.doc["meta"] = meta("reduce");
  r.doc["space"] = to_string(kind);
  r.doc["degree"] = o.degree;
  if (o.legs >= 0) r.doc["legs"] = o.legs;
  Json input = Json::array();
  DenseVector v;
  std::vector<std::string> basis;
  if (kind == SpaceKind::A) {
    auto space = space_A(o.degree);
    ChordCombination lc;
    for (const auto& arg : o.diagrams) {
      Term t = parse_term(arg);
      ChordDiagram c = ChordDiagram::parse(t.diagram);
      add_term(lc, c, t.coefficient);
      input.push_back({{"coefficient", q(t.coefficient)}, {"diagram", c.str()}});
    }
    v = space->reduce(lc);
    for (const auto& b : space->representative_basis()) basis.push_back(b.str());
  } else {
    std::shared_ptr<const JacobiSpace> space;
    DiagramKind expect = DiagramKind::closed;
    std::optional<int> legs;
    if (o.legs >= 0) legs = o.legs;
    switch (kind) {
      case SpaceKind::G: space = space_G(o.degree); break;
      case SpaceKind::B:
        space = space_B(o.degree, legs);
        expect = DiagramKind::open;
        break;
      case SpaceKind::vacuum:
        space = space_vacuum(o.degree);
        expect = DiagramKind::vacuum;
        break;
      case SpaceKind::M:
        require(legs.has_value(), "space M needs --legs");
        space = space_M(*legs, o.degree);
        expect = DiagramKind::labeled;
        break;
      default: break;
    }
    JacobiCombination lc;
    for (const auto& arg : o.diagrams) {
      Term t = parse_term(arg);
      JacobiDiagram d = expect == DiagramKind::closed ? closed_diagram(t.diagram) : parse_jacobi(t.diagram);
      require(d.kind == expect, "diagram kind does not match space " + to_string(kind));
      add_canonical(lc, d, t.coefficient);
      input.push_back({{"coefficient", q(t.coefficient)}, {"diagram", format_jacobi(d)}});
    }
    v = space->reduce(lc);
    for (const auto& b : space->representative_basis()) basis.push_back(format_jacobi(b));
  }
  r.doc["input"] = input;
  r.doc["dimension"] = v.size();
  Json rows = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    rows.push_back({{"index", i}, {"basis", basis[i]}, {"coefficient", q(v[i])}});
  r.doc["coordinates"] = rows;
  return r;
}

struct Algebra {
  MetricLieAlgebra g;
  std::map<int, Representation> reps;  // keyed by k (sl2) or file index
  bool builtin = true;

  const Representation& rep(int k) {
    if (builtin) {
      auto it = reps.find(k);
      if (it == reps.end()) it = reps.emplace(k, sl2_irrep(k)).first;
      return it->second;
    }
    auto it = reps.find(k);
    if (it == reps.end()) throw UsageError("no representation " + std::to_string(k) + " in algebra file");
    return it->second;
  }

  RepFamily up_to(int k_max) {
    RepFamily out;
    if (builtin) {
      for (int k = 1; k <= k_max; ++k) out.push_back(rep(k));
    } else {
      for (const auto& [i, r] : reps)
        if (i <= k_max) out.push_back(r);
    }
    return out;
  }
};

Algebra load_algebra(const std::string& name) {
  Algebra a;
  if (name == "sl2") {
    a.g = builtin_sl2();
  } else if (name.rfind("file:", 0) == 0) {
    LieData data = load_lie_data(name.substr(5));
    a.g = std::move(data.algebra);
    a.reps = std::move(data.representations);
    a.builtin = false;
  } else {
    throw UsageError("unknown algebra '" + name + "' (use sl2 or file:PATH)");
  }
  LieValidation v = validate_metric_lie(a.g);
  if (!v.pass) throw UsageError("invalid Lie data: " + to_string(v.failure) + " at " + v.witness);
  for (const auto& [i, r] : a.reps) {
    LieValidation rv = validate_representation(a.g, r);
    if (!rv.pass) throw UsageError("invalid representation: " + rv.witness);
  }
  return a;
}

Report cmd_ws(const Options& o, int& status) {
  require(o.rep >= 0, "--rep is required");
  require(o.diagrams.size() == 1, "exactly one --diagram is required");
  require(o.mode == "scalar" || o.mode == "trace", "--mode must be scalar or trace");
  Algebra a = load_algebra(o.algebra);
  const Representation& rep = a.rep(o.rep);
  const std::string text = diagram_text(o.diagrams.front());
  JacobiDiagram d = closed_diagram(text);
  Report r;
  r.doc["meta"] = meta("ws");
  r.doc["diagram"] = is_record(text) ? format_jacobi(d) : ChordDiagram::parse(text).str();
  r.doc["algebra"] = o.algebra;
  r.doc["rep"] = o.rep;
  r.doc["mode"] = o.mode;
  try {
    const Scalar s = central_scalar(d, a.g, rep);
    r.doc["value"] = q(o.mode == "trace" ? s * rep.dimension : s);
  } catch (const NotCentral& e) {
    r.doc["value"] = nullptr;
    r.doc["error"] = e.what();
    status = verification_failed;
  }
  return r;
}

SuiteReport presentations_suite(int p) {
  SuiteReport rep;
  rep.suite = "presentations";
  rep.degree = p;
  for (int k = 0; k <= p; ++k) {
    PresentationReport pr = verify_presentation_iso(k);
    CheckResult c = named_check("degree " + std::to_string(k));
    record(c, pr.pass, pr.failure + (pr.witness.empty() ? "" : ": " + pr.witness));
    rep.checks.push_back(c);
    const std::string s = std::to_string(k);
    rep.facts["dim A_" + s] = std::to_string(pr.dim_chords);
    rep.facts["dim G_" + s] = std::to_string(pr.dim_closed);
    rep.facts["rank of chord image in G_" + s] = std::to_string(pr.image_rank);
    rep.facts["closed IHX generators in degree " + s] = std::to_string(pr.ihx_generators);
    rep.facts["four-term generators in degree " + s] = std::to_string(pr.four_term_generators);
  }
  return finish(std::move(rep));
}

Report cmd_verify(const Options& o, int& status) {
  const std::string& s = o.suite;
  SuiteReport rep;
  auto need_degree = [&] { require(o.degree >= 0, "--degree is required for suite " + s); };
  if (s == "presentations") {
    need_degree();
    rep = presentations_suite(o.degree);
  } else if (s == "hopf") {
    need_degree();
    rep = verify_bialgebra(o.degree);
  } else if (s == "sigma") {
    need_degree();
    rep = verify_symmetrization_iso(o.degree);
  } else if (s == "primitives") {
    need_degree();
    rep = verify_primitives(o.degree);
  } else if (s == "ws-vanish") {
    const int n_max = o.n_max >= 0 ? o.n_max : o.degree;
    const int p_max = o.p_max >= 0 ? o.p_max : o.degree;
    require(n_max >= 0 && p_max >= 0, "--degree (or --n-max and --p-max) is required");
    Algebra a = load_algebra(o.algebra);
    rep = verify_relations_vanish(a.g, a.up_to(o.k_max >= 0 ? o.k_max : 4), n_max, p_max);
  } else if (s == "centrality") {
    need_degree();
    Algebra a = load_algebra(o.algebra);
    rep = verify_centrality(a.g, a.up_to(o.k_max >= 0 ? o.k_max : 3), o.degree);
    SuiteReport ad = verify_ad_invariance(a.g, std::min(o.degree, 2));
    rep.checks.insert(rep.checks.end(), ad.checks.begin(), ad.checks.end());
    rep = finish(std::move(rep));
  } else if (s == "lemker") {
    require(o.legs >= 1, "--legs (at least 1) is required for suite lemker");
    require(o.grade >= 0, "--grade is required for suite lemker");
    rep = verify_lemker(o.legs, o.grade);
  } else {
    throw UsageError("unknown suite '" + s + "'");
  }
  Report r;
  r.table = "checks";
  r.doc["meta"] = meta("verify");
  r.doc["suite"] = rep.suite;
  if (s == "lemker") {
    r.doc["legs"] = o.legs;
    r.doc["grade"] = o.grade;
  } else {
    r.doc["degree"] = rep.degree;
  }
  if (s == "ws-vanish" || s == "centrality") r.doc["algebra"] = o.algebra;
  r.doc["pass"] = rep.pass;
  r.doc["checks"] = checks_json(rep);
  Json facts = Json::object();
  for (const auto& [k, v] : rep.facts) facts[k] = v;
  r.doc["facts"] = facts;
  if (!rep.pass) status = verification_failed;
  return r;
}

Report cmd_decomposition(const Options& o) {
  require(o.legs >= 0, "--legs is required");
  require(o.max_grade >= 0, "--max-grade is required");
  DecompositionReport d = decomposition_report(o.legs, o.max_grade);
  Report r;
  r.table = "rows";
  r.doc["meta"] = meta("decomposition");
  r.doc["legs"] = d.legs;
  r.doc["max_grade"] = d.max_grade;
  r.doc["connected_vacuum"] = d.connected_vacuum;
  Json rows = Json::array();
  for (const auto& row : d.rows)
    rows.push_back({{"grade", row.grade}, {"vacuum", row.vacuum}, {"legged", row.legged}, {"total", row.total}});
  r.doc["rows"] = rows;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Chord diagram algebra: spaces, relations, Hopf structure, weight systems"};
  app.name("chordal");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", o.output, "Write the report to this file instead of stdout");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", o.config, "File of key=value defaults; flags win");

  auto* dims = app.add_subcommand("dims", "Dimension and basis of a diagram space");
  dims->add_option("--space", o.space, "A, G, B, vacuum or M")->required()
      ->check(CLI::IsMember({"A", "G", "B", "vacuum", "M"}));
  dims->add_option("--degree", o.degree, "Order (loop order for M)");
  dims->add_option("--legs", o.legs, "Leg count (B: optional filter, M: required)");

  auto* en = app.add_subcommand("enumerate", "List canonical diagrams");
  en->add_option("--kind", o.kind, "chord, closed, open, vacuum or labeled")->required()
      ->check(CLI::IsMember({"chord", "closed", "open", "vacuum", "labeled"}));
  en->add_option("--order,--degree", o.degree, "Order");
  en->add_option("--legs", o.legs, "Leg count (open and labeled)");
  en->add_flag("--include-degenerate", o.include_degenerate, "Also list diagrams that vanish");

  auto* red = app.add_subcommand("reduce", "Coordinates of a combination on the representative basis");
  red->add_option("--space", o.space, "A, G, B, vacuum or M")->required()
      ->check(CLI::IsMember({"A", "G", "B", "vacuum", "M"}));
  red->add_option("--degree", o.degree, "Order (loop order for M)");
  red->add_option("--legs", o.legs, "Leg count");
  red->add_option("--diagram", o.diagrams, "[COEF*]DIAGRAM, repeatable; word, record or file");

  auto* ws = app.add_subcommand("ws", "Evaluate a Lie algebra weight system");
  ws->add_option("--algebra", o.algebra, "sl2 or file:PATH");
  ws->add_option("--rep", o.rep, "Highest weight k of V_k, or representation index in the file");
  ws->add_option("--diagram", o.diagrams, "Chord word, closed record, or a file holding one");
  ws->add_option("--mode", o.mode, "scalar or trace")->check(CLI::IsMember({"scalar", "trace"}));

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", o.suite, "presentations, hopf, sigma, primitives, ws-vanish, lemker, centrality")
      ->required()
      ->check(CLI::IsMember({"presentations", "hopf", "sigma", "primitives", "ws-vanish", "lemker", "centrality"}));
  ver->add_option("--degree", o.degree, "Degree cap");
  ver->add_option("--legs", o.legs, "Leg count |X| (lemker)");
  ver->add_option("--grade", o.grade, "Grade k (lemker)");
  ver->add_option("--k-max", o.k_max, "Largest representation (ws-vanish: 4, centrality: 3)");
  ver->add_option("--n-max", o.n_max, "Four-term order cap (ws-vanish; default --degree)");
  ver->add_option("--p-max", o.p_max, "STU order cap (ws-vanish; default --degree)");
  ver->add_option("--algebra", o.algebra, "sl2 or file:PATH");

  auto* dec = app.add_subcommand("decomposition", "Dimension table of the vacuum and legged factors");
  dec->add_option("--legs", o.legs, "Number of legs n");
  dec->add_option("--max-grade", o.max_grade, "Largest grade");

  std::vector<std::string> args = args_in;
  try {
    // Config defaults become flags appended after the user's own, unless the
    // flag is already present or the chosen command has no such option.
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (!config.empty()) {
      CLI::App* sub = nullptr;
      for (const auto& a : args)
        if (auto* s = app.get_subcommand_no_throw(a)) {
          sub = s;
          break;
        }
      for (const auto& [key, value] : read_config(config)) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
        if (given) continue;
        const bool known = app.get_option_no_throw(flag) != nullptr ||
                           (sub && sub->get_option_no_throw(flag) != nullptr);
        if (!known) continue;
        args.push_back(flag);
        args.push_back(value);
      }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage_error;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  int status = ok;
  try {
    set_parallelism(o.jobs);
    const Format format = parse_format(o.format);
    Report report;
    if (dims->parsed())
      report = cmd_dims(o);
    else if (en->parsed())
      report = cmd_enumerate(o);
    else if (red->parsed())
      report = cmd_reduce(o);
    else if (ws->parsed())
      report = cmd_ws(o, status);
    else if (ver->parsed())
      report = cmd_verify(o, status);
    else
      report = cmd_decomposition(o);
    const std::string text = emit(report, format);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw UsageError("cannot write " + o.output);
      f << text;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const OutsideAmbient& e) {
    err << "error: " << e.what() << " (check --degree and --legs)\n";
    return usage_error;
  } catch (const LieDataError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return status;
}

}  // namespace chordal::cli
