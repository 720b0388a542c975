#include "bvlab/expcli.hpp"

#include "bvlab/domains.hpp"
#include "bvlab/functions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bvlab {

namespace fs = std::filesystem;
using nlohmann::json;

double parse_h(const std::string& text) {
  double v = 0.0;
  try {
    const auto slash = text.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
      v = std::stod(text, &used);
      if (used != text.size()) throw Error("");
    } else {
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      size_t ua = 0, ub = 0;
      v = std::stod(a, &ua) / std::stod(b, &ub);
      if (ua != a.size() || ub != b.size()) throw Error("");
    }
  } catch (const std::exception&) {
    throw Error("bad cell size: " + text);
  }
  if (!(v > 0) || !std::isfinite(v)) throw Error("bad cell size: " + text);
  return v;
}

// ---- config -------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  static const std::set<std::string> keys{"experiment", "domain", "function", "weight", "h",
                                          "whitney_scale", "lambda", "radii", "tolerances"};
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw Error("unknown config key: " + k);
  ExperimentConfig c;
  c.experiment = j.value("experiment", std::string());
  if (j.contains("domain")) c.domain = j.at("domain").get<std::string>();
  if (j.contains("function")) c.function = j.at("function").get<std::string>();
  if (j.contains("weight")) c.weight = j.at("weight").get<std::string>();
  if (j.contains("h")) {
    const auto& h = j.at("h");
    c.h = h.is_string() ? parse_h(h.get<std::string>()) : h.get<double>();
  }
  if (j.contains("whitney_scale")) c.whitney_scale = j.at("whitney_scale").get<double>();
  if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
  if (j.contains("radii")) c.radii = j.at("radii").get<std::vector<double>>();
  if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  return c;
}

json ExperimentConfig::to_json() const {
  json j = json::object();
  j["experiment"] = experiment;
  if (domain) j["domain"] = *domain;
  if (function) j["function"] = *function;
  if (weight) j["weight"] = *weight;
  if (h) j["h"] = *h;
  if (whitney_scale) j["whitney_scale"] = *whitney_scale;
  if (lambda) j["lambda"] = *lambda;
  if (!radii.empty()) j["radii"] = radii;
  if (!tolerances.empty()) j["tolerances"] = tolerances;
  return j;
}

void ExperimentConfig::validate() const {
  find_experiment(experiment);
  if (h && !(*h > 0)) throw Error("h must be positive");
  if (whitney_scale && !(*whitney_scale > 0)) throw Error("whitney scale must be positive");
  if (lambda && !(*lambda >= 1)) throw Error("lambda must be at least 1");
  for (double r : radii)
    if (!(r > 0)) throw Error("radii must be positive");
  if (domain) {
    const auto shape = make_shape(parse_domain_spec(*domain));
    if (h && shape->feature_size() < 2 * *h) throw Error("under-resolved domain");
  }
  if (function && function->rfind("csv:", 0) != 0) {
    const auto cat = function_catalog();
    const std::string name = parse_domain_spec(*function).kind;
    if (std::find(cat.begin(), cat.end(), name) == cat.end())
      throw Error("unknown function: " + name);
  }
  if (weight && *weight != "constant" && weight->rfind("power:", 0) != 0) throw Error("unknown weight: " + *weight);
}

// ---- reports ------------------------------------------------------------

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error("bad number in report: " + s);
}

}  // namespace

json Report::to_json() const {
  json j;
  j["schema"] = kReportSchema;
  j["experiment"] = experiment;
  j["statements"] = statements;
  j["config"] = config;
  j["artifacts"] = artifacts;
  json cs = json::array();
  for (const auto& c : checks) {
    json r;
    r["name"] = c.name;
    r["statement"] = c.statement;
    r["status"] = c.status;
    r["lhs"] = number(c.lhs);
    r["rhs"] = number(c.rhs);
    r["constant"] = number(c.constant);
    r["tolerance"] = c.tolerance;
    r["refinement"] = c.refinement;
    r["note"] = c.note;
    cs.push_back(r);
  }
  j["checks"] = cs;
  json s;
  for (const char* k : {"pass", "fail", "flag", "error"}) s[k] = count(k);
  j["summary"] = s;
  return j;
}

Report Report::from_json(const json& j) {
  if (j.value("schema", 0) != kReportSchema) throw Error("unsupported report schema");
  Report r;
  r.experiment = j.at("experiment").get<std::string>();
  r.statements = j.at("statements").get<std::vector<std::string>>();
  r.config = j.at("config");
  r.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
  for (const auto& c : j.at("checks")) {
    CheckRecord k;
    k.name = c.at("name").get<std::string>();
    k.statement = c.at("statement").get<std::string>();
    k.status = c.at("status").get<std::string>();
    k.lhs = number(c.at("lhs"));
    k.rhs = number(c.at("rhs"));
    k.constant = number(c.at("constant"));
    k.tolerance = c.at("tolerance").get<double>();
    k.refinement = c.at("refinement").get<bool>();
    k.note = c.value("note", std::string());
    r.checks.push_back(k);
  }
  return r;
}

int Report::count(const std::string& status) const {
  return int(std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == status; }));
}

std::string dump_report(const Report& r) { return r.to_json().dump(2) + "\n"; }

Report load_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("bad report " + path.string() + ": " + e.what());
  }
  return Report::from_json(j);
}

// ---- running ------------------------------------------------------------

RunContext::RunContext(ExperimentConfig cfg, fs::path out_dir, Report& report)
    : cfg_(std::move(cfg)), out_(std::move(out_dir)), report_(report) {}

std::vector<double> RunContext::radii(std::vector<double> fallback) const {
  return cfg_.radii.empty() ? fallback : cfg_.radii;
}

double RunContext::tol(const std::string& name, double fallback) const {
  const auto it = cfg_.tolerances.find(name);
  return it == cfg_.tolerances.end() ? fallback : it->second;
}

void RunContext::add(CheckRecord r) {
  static const std::set<std::string> ok{"pass", "fail", "flag", "error"};
  if (!ok.count(r.status)) throw Error("bad check status: " + r.status);
  report_.checks.push_back(std::move(r));
}

void RunContext::guard(const std::string& name, const std::string& statement, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    add({.name = name, .statement = statement, .status = "error", .note = e.what()});
  }
}

std::string RunContext::artifact(const std::string& file) {
  const fs::path rel = fs::path(report_.experiment) / file;
  fs::create_directories(out_ / report_.experiment);
  report_.artifacts[file] = rel.generic_string();
  return (out_ / rel).string();
}

const Experiment& find_experiment(const std::string& id) {
  for (const auto& e : experiment_registry())
    if (e.id == id) return e;
  throw Error("unknown experiment: " + id);
}

namespace {

void write_atomically(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const Experiment& e = find_experiment(cfg.experiment);
  fs::create_directories(out_dir);
  Report r;
  r.experiment = e.id;
  r.statements = e.statements;
  r.config = cfg.to_json();
  RunContext ctx(cfg, out_dir, r);
  ctx.guard("module_error", e.statements.front(), [&] { e.body(ctx); });
  write_atomically(out_dir / (e.id + ".json"), dump_report(r));
  return r;
}

// ---- regression ---------------------------------------------------------

RegressionDiff diff_reports(const Report& golden, const Report& current) {
  RegressionDiff d;
  d.reports = 1;
  const std::string tag = golden.experiment + ": ";
  if (golden.experiment != current.experiment) {
    d.mismatches.push_back(tag + "experiment differs (" + current.experiment + ")");
    return d;
  }
  std::map<std::string, const CheckRecord*> cur;
  for (const auto& c : current.checks) cur[c.name] = &c;
  std::set<std::string> seen;
  for (const auto& g : golden.checks) {
    seen.insert(g.name);
    const auto it = cur.find(g.name);
    if (it == cur.end()) {
      d.mismatches.push_back(tag + g.name + " missing");
      continue;
    }
    ++d.records;
    const CheckRecord& c = *it->second;
    if (g.status != c.status) d.mismatches.push_back(tag + g.name + " status " + g.status + " -> " + c.status);
    const double tol = g.refinement ? g.tolerance : 1e-12;
    auto cmp = [&](const char* field, double a, double b) {
      if (std::isnan(a) && std::isnan(b)) return;
      if (a == b) return;
      const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
      if (!(std::abs(a - b) <= tol * scale)) {
        std::ostringstream s;
        s.precision(10);
        s << tag << g.name << '.' << field << ' ' << a << " -> " << b << " (tolerance " << tol << ')';
        d.mismatches.push_back(s.str());
      }
    };
    cmp("lhs", g.lhs, c.lhs);
    cmp("rhs", g.rhs, c.rhs);
    cmp("constant", g.constant, c.constant);
  }
  for (const auto& c : current.checks)
    if (!seen.count(c.name)) d.mismatches.push_back(tag + c.name + " not in golden");
  return d;
}

RegressionDiff regress(const fs::path& golden_dir, const fs::path& out_dir) {
  if (!fs::is_directory(golden_dir)) throw Error("missing golden directory: " + golden_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(golden_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no golden reports in " + golden_dir.string());
  RegressionDiff total;
  for (const auto& f : files) {
    const Report g = load_report(f);
    const Report c = run_experiment(ExperimentConfig::from_json(g.config), out_dir);
    const RegressionDiff d = diff_reports(g, c);
    total.reports += d.reports;
    total.records += d.records;
    total.mismatches.insert(total.mismatches.end(), d.mismatches.begin(), d.mismatches.end());
  }
  return total;
}

CoverageReport coverage() {
  CoverageReport c;
  std::set<std::string> known;
  for (const auto& s : statement_catalog()) {
    known.insert(s.id);
    c.experiments[s.id];
  }
  for (const auto& e : experiment_registry())
    for (const auto& s : e.statements) {
      if (!known.count(s)) {
        c.unknown.push_back(e.id + ":" + s);
        continue;
      }
      c.experiments[s].push_back(e.id);
    }
  for (const auto& [s, ids] : c.experiments)
    if (ids.empty()) c.unmapped.push_back(s);
  return c;
}

}  // namespace bvlab
