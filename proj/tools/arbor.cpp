#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arbor/acceptance.hpp"
#include "arbor/catalog.hpp"
#include "arbor/machine_file.hpp"
#include "arbor/reps.hpp"
#include "arbor/spectra.hpp"

using namespace arbor;
using json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string action;
  std::string levels;
  std::string gens;
  std::string interval;
  std::string dot_path;
  std::string csv_path;
  std::string name;
  std::string only;
  std::size_t level = 1;
  std::size_t radius = 3;
  std::size_t depth = 6;
  std::size_t power = 0;
  double tol = 1e-8;
  double threshold = -1;
};

bool as_json(const Options& o) { return o.format == "json"; }

ActionSpec load_action(const std::string& name) {
  if (name.empty()) throw UsageError("--action is required");
  if (name.size() > 5 && name.ends_with(".json")) {
    std::ifstream in(name);
    if (!in) throw UsageError("cannot read machine file '" + name + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_machine(ss.str());
  }
  try {
    return catalog::by_name(name);
  } catch (const ActionError& e) {
    throw UsageError(e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto n = std::stoul(text);
      return {n, n};
    }
    const auto a = std::stoul(text.substr(0, dots)), b = std::stoul(text.substr(dots + 2));
    if (a > b) throw UsageError("empty level range '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad level range '" + text + "' (expected a..b)");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<std::string> generating_set(const ActionSpec& action, const std::string& gens) {
  return gens.empty() ? action.generator_labels() : split(gens, ',');
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

const char* status_word(int code) { return code == kPass ? "PASS" : code == kFail ? "FAIL" : "INCONCLUSIVE"; }

int emit(const Options& o, json summary, const std::string& text, int code) {
  if (as_json(o)) {
    summary["status"] = status_word(code);
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return code;
}

int catalog_list(const Options& o) {
  json j = {{"command", "catalog list"}, {"actions", json::array()}};
  std::ostringstream text;
  for (const auto& n : catalog::names()) {
    j["actions"].push_back({{"name", n}, {"source", catalog::source(n)}});
    text << n << "  " << catalog::source(n) << "\n";
  }
  return emit(o, j, text.str(), kPass);
}

const ActionSpec& catalog_action(const std::string& name) {
  try {
    return catalog::by_name(name);
  } catch (const ActionError& e) {
    throw UsageError(e.what());
  }
}

int catalog_show(const Options& o) {
  const auto& a = catalog_action(o.name);
  std::ostringstream text;
  text << a.name << ": " << catalog::source(a.name) << "\n"
       << "shape: " << a.shape().to_string() << "\n"
       << "generators:";
  for (const auto& l : a.generator_labels()) text << " " << l;
  text << "\n" << catalog::recursion_table(*a.machine);
  json j = {{"command", "catalog show"},
            {"name", a.name},
            {"source", catalog::source(a.name)},
            {"shape", a.shape().to_string()},
            {"generators", a.generator_labels()},
            {"recursion", catalog::recursion_table(*a.machine)}};
  return emit(o, j, text.str(), kPass);
}

int catalog_export(const Options& o) {
  const auto& a = catalog_action(o.name);
  std::cout << serialize(machine_file_of(a, catalog::source(a.name)));
  return kPass;
}

int schreier(const Options& o) {
  const auto action = load_action(o.action);
  const auto g = schreier_graph(action, o.level);
  const auto dot = to_dot(g);
  if (!o.dot_path.empty()) write_file(o.dot_path, dot);
  const bool transitive = is_level_transitive(action, o.level);
  json j = {{"command", "schreier"},
            {"action", action.name},
            {"level", o.level},
            {"vertices", g.vertices.size()},
            {"edges", g.vertices.size() * g.generators.size()},
            {"transitive", transitive}};
  std::string text = o.dot_path.empty() ? dot
                                        : "level " + std::to_string(o.level) + ": " + std::to_string(g.vertices.size()) +
                                              " vertices, " + (transitive ? "transitive" : "not transitive") +
                                              ", DOT written to " + o.dot_path + "\n";
  return emit(o, j, text, kPass);
}

int spectrum_cmd(const Options& o) {
  const auto action = load_action(o.action);
  const auto [lo, hi] = parse_range(o.levels);
  const auto F = generating_set(action, o.gens);
  const auto report = spectrum_report(tower_from_action(action, hi), F, lo, hi);
  const auto csv = report.to_csv();
  if (!o.csv_path.empty()) write_file(o.csv_path, csv);
  json j = {{"command", "spectrum"}, {"action", action.name}, {"generating_set", F}, {"levels", json::array()}};
  for (const auto& [n, values] : report.levels)
    j["levels"].push_back({{"level", n}, {"eigenvalues", values}});
  std::string text = csv;
  if (!o.csv_path.empty()) {
    std::size_t rows = 0;
    for (const auto& [n, values] : report.levels) rows += values.size();
    text = std::to_string(rows) + " eigenvalues written to " + o.csv_path + "\n";
  }
  return emit(o, j, text, kPass);
}

int coverage_cmd(const Options& o) {
  const auto action = load_action(o.action);
  const auto [first, last] = parse_range(o.levels);
  const auto bounds = split(o.interval, ',');
  if (bounds.size() != 2) throw UsageError("--interval expects lo,hi");
  double lo = 0, hi = 0;
  try {
    lo = std::stod(bounds[0]);
    hi = std::stod(bounds[1]);
  } catch (const std::logic_error&) {
    throw UsageError("bad --interval '" + o.interval + "'");
  }
  const auto F = generating_set(action, o.gens);
  const auto report = spectrum_report(tower_from_action(action, last), F, first, last);
  const auto trend = coverage_trend(report, lo, hi);
  int code = kPass;
  if (o.threshold >= 0 && trend.final_gap() > o.threshold) code = kFail;
  json j = {{"command", "coverage"}, {"action", action.name}, {"generating_set", F}, {"interval", {lo, hi}}};
  j["trend"] = json::array();
  for (const auto& [n, g] : trend.gaps) j["trend"].push_back({{"top_level", n}, {"max_gap", g}});
  j["non_increasing"] = trend.non_increasing();
  j["final_gap"] = trend.final_gap();
  return emit(o, j, trend.to_text(), code);
}

int check_lsf(const Options& o) {
  const auto action = load_action(o.action);
  const auto ball = enumerate_ball(action, o.radius);
  const std::vector<Element> K(ball.elements.begin() + 1, ball.elements.end());
  const auto cert = lsf_certificate(action, K, o.depth);
  json j = {{"command", "check lsf"}, {"action", action.name}, {"radius", o.radius}, {"depth", o.depth},
            {"elements", K.size()}};
  std::ostringstream text;
  if (cert.is_certified()) {
    j["vertex"] = cert.value().to_string();
    text << "Certified: vertex " << cert.value().to_string() << " is moved by all " << K.size()
         << " nontrivial elements of the radius-" << o.radius << " ball\n";
    return emit(o, j, text.str(), kPass);
  }
  j["bounds"] = cert.bounds();
  text << "Inconclusive: " << cert.bounds() << "\n";
  return emit(o, j, text.str(), kInconclusive);
}

int check_kernel(const Options& o) {
  const auto action = load_action(o.action);
  std::optional<KernelReport> found;
  try {
    found = weakly_branched_kernel(action, o.level, o.radius, o.depth, o.power);
  } catch (const RepsError& e) {
    json j = {{"command", "check kernel"}, {"action", action.name}, {"error", e.what()}};
    if (!as_json(o)) std::cerr << "arbor: " << e.what() << "\n";
    return emit(o, j, "", kInconclusive);
  }
  const auto& r = *found;
  const int code = r.passed() ? kPass
                   : (r.nonzero == Verdict::kFalse || r.vanishing == Verdict::kFalse) ? kFail
                                                                                        : kInconclusive;
  json j = {{"command", "check kernel"}, {"action", action.name}, {"level", o.level}, {"radius", o.radius},
            {"depth", o.depth}, {"power", r.power}};
  j["witnesses"] = json::object();
  for (const auto& [v, g] : r.witnesses) j["witnesses"][v.to_string()] = g.to_string();
  j["terms"] = r.kernel.terms().size();
  j["nonzero"] = to_string(r.nonzero);
  j["vanishing"] = to_string(r.vanishing);
  j["transcript"] = r.nonzero_transcript;
  return emit(o, j, std::string(status_word(code)) + "\n" + r.to_text(), code);
}

int check_nesting(const Options& o) {
  const auto action = load_action(o.action);
  const auto [first, last] = parse_range(o.levels);
  const auto F = generating_set(action, o.gens);
  const auto tower = tower_from_action(action, last + 1);
  json j = {{"command", "check nesting"}, {"action", action.name}, {"tol", o.tol}, {"levels", json::array()}};
  std::ostringstream text;
  int code = kPass;
  for (auto n = first; n <= last; ++n) {
    const auto r = nesting_check(tower, F, n, o.tol);
    if (!r.nested) code = kFail;
    j["levels"].push_back({{"level", n}, {"nested", r.nested}, {"worst_gap", r.worst_gap}});
    text << "level " << n << " -> " << n + 1 << ": " << (r.nested ? "nested" : "NOT nested") << ", worst gap "
         << r.worst_gap << "\n";
  }
  return emit(o, j, text.str(), code);
}

int check_chain(const Options& o) {
  const auto action = load_action(o.action);
  const auto N = o.level;
  std::vector<std::uint64_t> idx;
  try {
    idx = chain_indices(tower_from_action(action, N), N);
  } catch (const TowerError& e) {
    json j = {{"command", "check chain"}, {"action", action.name}, {"error", e.what()}};
    return emit(o, j, std::string("FAIL\n") + e.what() + "\n", kFail);
  }
  std::vector<std::uint64_t> degrees;
  for (std::size_t n = 0; n < N; ++n) degrees.push_back(degree(action.shape(), n));
  const int code = idx == degrees ? kPass : kFail;
  json j = {{"command", "check chain"}, {"action", action.name}, {"indices", idx}, {"degrees", degrees}};
  std::ostringstream text;
  text << status_word(code) << "\nindices:";
  for (auto x : idx) text << " " << x;
  text << "\ndegrees:";
  for (auto x : degrees) text << " " << x;
  text << "\n";
  return emit(o, j, text.str(), code);
}

int run_acceptance(const Options& o) {
  std::vector<int> ids;
  for (const auto& s : split(o.only, ',')) {
    try {
      ids.push_back(std::stoi(s));
    } catch (const std::logic_error&) {
      throw UsageError("bad criterion id '" + s + "'");
    }
    if (ids.back() < 1 || ids.back() > acceptance::criterion_count())
      throw UsageError("no acceptance criterion " + s);
  }
  const auto results = acceptance::run(ids, [&](const acceptance::Result& r) {
    if (!as_json(o)) std::cout << acceptance::format_line(r) << std::endl;
  });
  int code = kPass;
  json j = {{"command", "run acceptance"}, {"criteria", json::array()}};
  for (const auto& r : results) {
    if (r.status == acceptance::Status::kFail) code = kFail;
    else if (r.status == acceptance::Status::kInconclusive && code == kPass) code = kInconclusive;
    j["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"status", acceptance::to_string(r.status)},
                             {"detail", r.detail}});
  }
  return emit(o, j, "", code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arbor: group actions on rooted trees"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::function<int()> handler;
  auto bind = [&](CLI::App* cmd, int (*fn)(const Options&)) {
    cmd->callback([&handler, &o, fn] { handler = [&o, fn] { return fn(o); }; });
  };

  auto* cat = app.add_subcommand("catalog", "Built-in actions")->require_subcommand(1);
  bind(cat->add_subcommand("list", "List catalog actions"), catalog_list);
  auto* show = cat->add_subcommand("show", "Show an action's wreath recursion");
  show->add_option("name", o.name)->required();
  bind(show, catalog_show);
  auto* exp = cat->add_subcommand("export", "Print an action as a JSON machine file");
  exp->add_option("name", o.name)->required();
  bind(exp, catalog_export);

  auto add_action = [&](CLI::App* cmd) {
    cmd->add_option("--action", o.action, "Catalog name or path to a .json machine file")->required();
  };

  auto* sch = app.add_subcommand("schreier", "Schreier graph of a level");
  add_action(sch);
  sch->add_option("--level", o.level)->required();
  sch->add_option("--dot", o.dot_path, "Write DOT here instead of stdout");
  bind(sch, schreier);

  auto* spec = app.add_subcommand("spectrum", "Markov operator spectra as CSV");
  add_action(spec);
  spec->add_option("--levels", o.levels, "a..b")->required();
  spec->add_option("--gens", o.gens, "Comma-separated words (default: generators)");
  spec->add_option("--csv", o.csv_path);
  bind(spec, spectrum_cmd);

  auto* cov = app.add_subcommand("coverage", "Interval coverage by the union of spectra");
  add_action(cov);
  cov->add_option("--interval", o.interval, "lo,hi")->required();
  cov->add_option("--levels", o.levels, "a..b")->required();
  cov->add_option("--gens", o.gens);
  cov->add_option("--threshold", o.threshold, "Fail if the final gap exceeds this");
  bind(cov, coverage_cmd);

  auto* check = app.add_subcommand("check", "Certified checks")->require_subcommand(1);
  auto* lsf = check->add_subcommand("lsf", "Vertex moved by every nontrivial ball element");
  add_action(lsf);
  lsf->add_option("--radius", o.radius)->required();
  lsf->add_option("--depth", o.depth)->required();
  bind(lsf, check_lsf);
  auto* ker = check->add_subcommand("kernel", "Kernel element from rigid stabilizer witnesses");
  add_action(ker);
  ker->add_option("--level", o.level)->required();
  ker->add_option("--radius", o.radius)->required();
  ker->add_option("--power", o.power, "Tensor power (default |L_n| - 1)");
  ker->add_option("--depth", o.depth)->required();
  bind(ker, check_kernel);
  auto* nest = check->add_subcommand("nesting", "Level-n eigenvalues recur at level n+1");
  add_action(nest);
  nest->add_option("--levels", o.levels, "a..b")->required();
  nest->add_option("--tol", o.tol);
  nest->add_option("--gens", o.gens);
  bind(nest, check_nesting);
  auto* chain = check->add_subcommand("chain", "Stabilizer chain indices against the shape degrees");
  add_action(chain);
  chain->add_option("--levels", o.level, "N")->required();
  bind(chain, check_chain);

  auto* run = app.add_subcommand("run", "Suites")->require_subcommand(1);
  auto* acc = run->add_subcommand("acceptance", "Run the acceptance criteria");
  acc->add_option("--only", o.only, "Comma-separated criterion ids");
  bind(acc, run_acceptance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return handler();
  } catch (const UsageError& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return kUsage;
  } catch (const InconclusiveError& e) {
    std::cerr << "arbor: inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return kFail;
  }
}
