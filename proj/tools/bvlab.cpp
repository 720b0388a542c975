#include "bvlab/capacity.hpp"
#include "bvlab/expcli.hpp"
#include "bvlab/functions.hpp"
#include "bvlab/traces.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace bvlab;

namespace {

// Positive entries accept "1/512"; signed ones are plain decimals.
std::vector<double> parse_list(const std::string& text, bool positive = true) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (positive) {
      out.push_back(parse_h(item));
      continue;
    }
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

Weight parse_weight(const std::string& w) {
  if (w.empty() || w == "constant") return Weight::constant();
  if (w.rfind("power:", 0) == 0) return Weight::power(std::stod(w.substr(6)));
  throw Error("unknown weight: " + w);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad JSON in " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bvlab: BV functions and traces on metric measure grids"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one experiment and write its report");
  std::string experiment, config_file, h_text, out = "bvlab_out", domain, function, weight, radii;
  double whitney = 0, lambda = 0;
  run->add_option("experiment", experiment, "experiment id (see `bvlab list`)")->required();
  run->add_option("--config", config_file, "config JSON");
  run->add_option("--h", h_text, "cell size, e.g. 1/512");
  run->add_option("--out", out, "output directory");
  run->add_option("--domain", domain, "domain spec, e.g. exterior_cusp:beta=2");
  run->add_option("--function", function, "function spec, e.g. radial_power:alpha=-0.5");
  run->add_option("--weight", weight, "constant or power:<alpha>");
  run->add_option("--whitney-scale", whitney, "Whitney scale R");
  run->add_option("--lambda", lambda, "Whitney dilation lambda");
  run->add_option("--radii", radii, "comma-separated radii");

  // regress
  auto* reg = app.add_subcommand("regress", "rerun golden reports and diff");
  std::string golden = "golden", reg_out = "bvlab_regress";
  reg->add_option("--golden", golden, "directory of golden reports");
  reg->add_option("--out", reg_out, "output directory for the reruns");

  auto* cov = app.add_subcommand("coverage", "map statements to experiments");
  auto* list = app.add_subcommand("list", "list experiments");

  // trace
  auto* tr = app.add_subcommand("trace", "empirical traces at boundary samples, as CSV");
  std::string tr_domain = "unit_square", tr_function = "coordinate", tr_h = "1/256", tr_radii, tr_out = "traces.csv",
              tr_part;
  int tr_n = 32;
  tr->add_option("--domain", tr_domain, "domain spec");
  tr->add_option("--function", tr_function, "function spec");
  tr->add_option("--h", tr_h, "cell size");
  tr->add_option("--weight", weight, "constant or power:<alpha>");
  tr->add_option("--radii", tr_radii, "comma-separated decreasing radii");
  tr->add_option("--samples", tr_n, "number of boundary samples");
  tr->add_option("--part", tr_part, "boundary piece (arc, slit, wall, tip, ...)");
  tr->add_option("--out", tr_out, "CSV path");

  // capacity
  auto* cap = app.add_subcommand("capacity", "BV capacity or relative capacity of a set");
  std::string set, grid, kind = "cap", ball, cap_h = "1/128", cap_out = "capacity";
  cap->add_option("--set", set, "PGM mask file (with --grid) or domain spec")->required();
  cap->add_option("--grid", grid, "grid JSON for a PGM mask");
  cap->add_option("--kind", kind, "cap or rcap")->check(CLI::IsMember({"cap", "rcap"}));
  cap->add_option("--ball", ball, "cx,cy,r: B for rcap (ambient ball 2B)");
  cap->add_option("--h", cap_h, "cell size for a domain spec");
  cap->add_option("--weight", weight, "constant or power:<alpha>");
  cap->add_option("--out", cap_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg;
      if (!config_file.empty()) cfg = ExperimentConfig::from_json(read_json(config_file));
      if (!cfg.experiment.empty() && cfg.experiment != experiment)
        throw Error("config is for experiment " + cfg.experiment);
      cfg.experiment = experiment;
      if (!h_text.empty()) cfg.h = parse_h(h_text);
      if (!domain.empty()) cfg.domain = domain;
      if (!function.empty()) cfg.function = function;
      if (!weight.empty()) cfg.weight = weight;
      if (whitney > 0) cfg.whitney_scale = whitney;
      if (lambda > 0) cfg.lambda = lambda;
      if (!radii.empty()) cfg.radii = parse_list(radii);
      const Report r = run_experiment(cfg, out);
      for (const auto& c : r.checks)
        std::cout << c.status << '\t' << c.name << '\t' << c.constant << (c.note.empty() ? "" : "\t" + c.note) << '\n';
      std::cout << r.count("pass") << " pass, " << r.count("fail") << " fail, " << r.count("flag") << " flag, "
                << r.count("error") << " error -> " << (fs::path(out) / (r.experiment + ".json")).string() << '\n';
      return 0;
    }
    if (*reg) {
      const auto d = regress(golden, reg_out);
      for (const auto& m : d.mismatches) std::cout << m << '\n';
      std::cout << d.reports << " reports, " << d.records << " records, " << d.mismatches.size() << " mismatches\n";
      return d.ok() ? 0 : 1;
    }
    if (*cov) {
      const auto c = coverage();
      for (const auto& [s, ids] : c.experiments) {
        std::cout << s << ':';
        for (const auto& e : ids) std::cout << ' ' << e;
        std::cout << '\n';
      }
      for (const auto& s : c.unknown) std::cout << "unknown statement " << s << '\n';
      std::cout << c.experiments.size() << " statements, " << c.unmapped.size() << " unmapped\n";
      return c.ok() ? 0 : 1;
    }
    if (*list) {
      for (const auto& e : experiment_registry()) std::cout << e.id << '\t' << e.summary << '\n';
      return 0;
    }
    if (*tr) {
      const auto om = make_domain(tr_domain, parse_h(tr_h), parse_weight(weight));
      const auto u = sample_function(tr_function, om);
      TraceParams p;
      if (!tr_radii.empty()) p.radii = parse_list(tr_radii);
      const auto samples = tr_part.empty() ? om.boundary_samples(tr_n) : om.boundary_samples(tr_n, tr_part);
      const auto res = trace_field(u, om, samples, p);
      write_trace_csv(res, tr_out);
      int counts[3] = {0, 0, 0};
      for (const auto& t : res) ++counts[int(t.status)];
      std::cout << counts[0] << " exist, " << counts[1] << " fail, " << counts[2] << " inconclusive -> " << tr_out
                << '\n';
      return 0;
    }
    if (*cap) {
      std::optional<GridSpace> space;
      CellMask A;
      if (!grid.empty()) {
        space = grid_space_from_json(read_json(grid));
        A = import_pgm_mask(set, *space).inside;
      } else {
        const auto om = make_domain(set, parse_h(cap_h), parse_weight(weight), 1.0);
        space = om.space;
        A = om.inside;
      }
      std::optional<Ball> b;
      if (!ball.empty()) {
        const auto v = parse_list(ball, false);
        if (v.size() != 3) throw Error("--ball needs cx,cy,r");
        b = Ball(Point(v[0], v[1]), v[2]);
      }
      const auto c = capacity(*space, A, kind == "cap" ? CapacityKind::cap : CapacityKind::rcap, b);
      fs::create_directories(cap_out);
      const auto cert = (fs::path(cap_out) / "minimizer.csv").string();
      write_field_csv(c.minimizer, cert);
      auto j = to_json(c);
      j["certificate"] = cert;
      std::ofstream(fs::path(cap_out) / "capacity.json") << j.dump(2) << '\n';
      std::cout << to_string(c.kind) << " = " << c.value << " (" << to_string(c.method) << ") -> "
                << (fs::path(cap_out) / "capacity.json").string() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "bvlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bvlab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
