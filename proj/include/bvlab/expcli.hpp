#pragma once

#include "bvlab/core.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvlab {

inline constexpr int kReportSchema = 1;

/// "1/512" or a decimal.
double parse_h(const std::string& text);

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::string> domain;    // catalog spec, e.g. "disk:r=0.5"
  std::optional<std::string> function;  // catalog spec, e.g. "tent"
  std::optional<std::string> weight;    // "constant" or "power:<alpha>"
  std::optional<double> h;
  std::optional<double> whitney_scale;  // R
  std::optional<double> lambda;
  std::vector<double> radii;
  std::map<std::string, double> tolerances;  // pass thresholds by name

  /// Unknown keys and malformed specs are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Catalog entries exist; h positive and resolving the domain.
  void validate() const;
};

struct CheckRecord {
  std::string name;
  std::string statement;    // statement id, or "plumbing"
  std::string status;       // pass | fail | flag | error
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double tolerance = 0.0;   // relative drift allowed by regression
  bool refinement = false;  // value moves with h
  std::string note;
};

struct Report {
  std::string experiment;
  std::vector<std::string> statements;
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  std::map<std::string, std::string> artifacts;  // name -> path relative to the output directory

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  int count(const std::string& status) const;
};

class RunContext {
 public:
  RunContext(ExperimentConfig cfg, std::filesystem::path out_dir, Report& report);

  const ExperimentConfig& config() const { return cfg_; }
  double h(double fallback) const { return cfg_.h.value_or(fallback); }
  std::string domain(const std::string& fallback) const { return cfg_.domain.value_or(fallback); }
  std::string function(const std::string& fallback) const { return cfg_.function.value_or(fallback); }
  double whitney_scale(double fallback) const { return cfg_.whitney_scale.value_or(fallback); }
  double lambda(double fallback) const { return cfg_.lambda.value_or(fallback); }
  std::vector<double> radii(std::vector<double> fallback) const;
  double tol(const std::string& name, double fallback) const;

  void add(CheckRecord r);
  /// Runs f; a module Error becomes an error record named `name`.
  void guard(const std::string& name, const std::string& statement, const std::function<void()>& f);
  /// Path for a new artifact under <out>/<experiment>/, recorded in the report.
  std::string artifact(const std::string& file);

 private:
  ExperimentConfig cfg_;
  std::filesystem::path out_;
  Report& report_;
};

struct Experiment {
  std::string id;
  std::string summary;
  std::vector<std::string> statements;
  std::function<void(RunContext&)> body;
};

const std::vector<Experiment>& experiment_registry();
const Experiment& find_experiment(const std::string& id);

struct Statement {
  std::string id;
  std::string summary;
};

/// Every checkable statement the laboratory targets.
const std::vector<Statement>& statement_catalog();

/// Runs the experiment and writes <out>/<experiment>.json (atomically) plus
/// artifacts. Module errors are recorded; plumbing errors throw.
Report run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

std::string dump_report(const Report& r);
Report load_report(const std::filesystem::path& path);

struct RegressionDiff {
  int reports = 0;
  int records = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Records are matched by name. Statuses must agree; lhs, rhs and constant
/// may drift by the golden record's tolerance when it is refinement-tagged
/// and must otherwise agree to 1e-12 relative.
RegressionDiff diff_reports(const Report& golden, const Report& current);

/// Reruns every golden report's config into out_dir and diffs.
RegressionDiff regress(const std::filesystem::path& golden_dir, const std::filesystem::path& out_dir);

struct CoverageReport {
  std::map<std::string, std::vector<std::string>> experiments;  // statement -> experiment ids
  std::vector<std::string> unmapped;                           // catalog statements without experiments
  std::vector<std::string> unknown;                            // experiment statements not in the catalog
  bool ok() const { return unmapped.empty() && unknown.empty(); }
};

CoverageReport coverage();

}  // namespace bvlab
