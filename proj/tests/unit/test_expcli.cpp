#include <doctest.h>

#include "bvlab/expcli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bvlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bvlab_expcli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig config(const std::string& id, double h) {
  ExperimentConfig c;
  c.experiment = id;
  c.h = h;
  return c;
}

}  // namespace

TEST_CASE("cell size parsing") {
  CHECK(parse_h("1/512") == 1.0 / 512);
  CHECK(parse_h("0.25") == 0.25);
  for (const char* bad : {"", "0", "-1/4", "1/0", "abc", "1/2x", "1//2"}) CHECK_THROWS_AS(parse_h(bad), Error);
}

TEST_CASE("config ingestion") {
  const auto c = ExperimentConfig::from_json(
      {{"experiment", "trace_square"}, {"h", "1/128"}, {"domain", "disk:r=0.5"}, {"radii", {0.25, 0.125}},
       {"tolerances", {{"fraction", 0.1}}}});
  CHECK(*c.h == 1.0 / 128);
  CHECK(c.radii.size() == 2);
  CHECK_NOTHROW(c.validate());
  CHECK(ExperimentConfig::from_json(c.to_json()).to_json() == c.to_json());

  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json({{"experiment", "x"}, {"grid", 1}}), "unknown config key: grid",
                       Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::array()), Error);
  auto bad = c;
  bad.experiment = "no_such_experiment";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.function = "wobble";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.domain = "cantor_complement:level=5";  // 3^-5 < 2h
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.weight = "log";
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("coverage has no unmapped statements") {
  const auto c = coverage();
  CHECK(c.unmapped.empty());
  CHECK(c.unknown.empty());
  CHECK(c.ok());
  CHECK(c.experiments.size() == statement_catalog().size());
  // Every record an experiment emits names one of its declared statements.
  const auto out = scratch("coverage");
  const auto r = run_experiment(config("boundary_conditions", 1.0 / 128), out);
  for (const auto& rec : r.checks)
    CHECK(std::find(r.statements.begin(), r.statements.end(), rec.statement) != r.statements.end());
  fs::remove_all(out);
}

TEST_CASE("reruns are byte-identical and diff empty") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto cfg = config("cantor_complement", 1.0 / 243);
  const auto ra = run_experiment(cfg, a);
  const auto rb = run_experiment(cfg, b);
  CHECK(slurp(a / "cantor_complement.json") == slurp(b / "cantor_complement.json"));
  REQUIRE(ra.artifacts.count("traces.csv"));
  CHECK(slurp(a / ra.artifacts.at("traces.csv")) == slurp(b / rb.artifacts.at("traces.csv")));
  CHECK(diff_reports(ra, rb).ok());
  CHECK(diff_reports(ra, rb).records == int(ra.checks.size()));
  // Loaded reports round-trip.
  const auto loaded = load_report(a / "cantor_complement.json");
  CHECK(dump_report(loaded) == slurp(a / "cantor_complement.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("halving h moves only refinement-tagged fields, within tolerance") {
  const auto a = scratch("h1"), b = scratch("h2");
  const auto coarse = run_experiment(config("weighted_measure_law", 1.0 / 512), a);
  const auto fine = run_experiment(config("weighted_measure_law", 1.0 / 1024), b);
  REQUIRE(coarse.checks.size() == fine.checks.size());
  for (size_t k = 0; k < coarse.checks.size(); ++k) {
    CHECK(coarse.checks[k].refinement);
    CHECK(coarse.checks[k].status == fine.checks[k].status);
  }
  CHECK(coarse.checks.front().lhs != fine.checks.front().lhs);
  const auto d = diff_reports(coarse, fine);
  INFO(d.mismatches.size());
  CHECK(d.ok());

  // The same drift on a record without the tag is reported (lhs and constant).
  auto untagged = coarse;
  untagged.checks.front().refinement = false;
  CHECK(diff_reports(untagged, fine).mismatches.size() == 2);
  // Status changes, missing and extra records are reported.
  auto other = fine;
  other.checks.front().status = "fail";
  other.checks.pop_back();
  other.checks.push_back({.name = "extra", .statement = "plumbing", .status = "pass"});
  CHECK(diff_reports(coarse, other).mismatches.size() == 3);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("regression against a golden directory") {
  const auto golden = scratch("golden"), out = scratch("regress_out");
  run_experiment(config("poincare", 1.0 / 64), golden);
  run_experiment(config("radon_lemma", 1.0 / 64), golden);
  const auto d = regress(golden, out);
  CHECK(d.reports == 2);
  CHECK(d.ok());
  CHECK(fs::exists(out / "poincare.json"));

  // A tampered golden value is listed.
  auto r = load_report(golden / "radon_lemma.json");
  r.checks.back().lhs += 1.0;
  std::ofstream(golden / "radon_lemma.json") << dump_report(r);
  CHECK(regress(golden, out).mismatches.size() == 1);

  CHECK_THROWS_AS(regress(scratch("missing"), out), Error);
  const auto empty = scratch("empty");
  fs::create_directories(empty);
  CHECK_THROWS_AS(regress(empty, out), Error);
  fs::remove_all(golden);
  fs::remove_all(out);
  fs::remove_all(empty);
}

TEST_CASE("module errors become records; plumbing errors throw") {
  const auto out = scratch("errors");
  auto cfg = config("trace_square", 1.0 / 64);
  cfg.function = "csv:/nonexistent/field.csv";
  const auto r = run_experiment(cfg, out);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].status == "error");
  CHECK(r.checks[0].name == "module_error");
  CHECK_FALSE(r.checks[0].note.empty());
  CHECK(fs::exists(out / "trace_square.json"));
  CHECK_THROWS_AS(run_experiment(config("nothing", 1.0 / 64), out), Error);
  fs::remove_all(out);
}

TEST_CASE("non-finite values survive the report format") {
  Report r;
  r.experiment = "x";
  r.checks.push_back({.name = "a", .statement = "plumbing", .status = "flag",
                      .lhs = std::numeric_limits<double>::infinity(),
                      .rhs = -std::numeric_limits<double>::infinity(),
                      .constant = std::numeric_limits<double>::quiet_NaN()});
  const auto back = Report::from_json(nlohmann::json::parse(dump_report(r)));
  CHECK(std::isinf(back.checks[0].lhs));
  CHECK(back.checks[0].rhs < 0);
  CHECK(std::isnan(back.checks[0].constant));
  CHECK(diff_reports(r, back).ok());
  auto j = r.to_json();
  j["schema"] = 99;
  CHECK_THROWS_AS(Report::from_json(j), Error);
}
