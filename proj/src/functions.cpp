#include "bvlab/functions.hpp"

#include "bvlab/distance.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace bvlab {

namespace {

ScalarField pointwise(const DomainMask& omega, const std::function<double(const Point&)>& f) {
  const auto& s = omega.space;
  RealField v = RealField::Zero(s.nx(), s.ny());
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i)
      if (omega.inside(i, j)) v(i, j) = f(s.center(i, j));
  return ScalarField(s, v, omega.inside);
}

}  // namespace

std::vector<std::string> function_catalog() {
  return {"constant", "coordinate", "tent", "arg", "radial_power", "half_indicator", "ball_indicator", "bump", "csv"};
}

ScalarField sample_function(const std::string& spec, const DomainMask& omega) {
  if (spec.rfind("csv:", 0) == 0) {
    ScalarField u = read_field_csv(omega.space, spec.substr(4));
    if ((omega.inside && !u.support).any()) throw Error("CSV field does not cover the domain");
    return ScalarField(u.space, u.values, omega.inside);
  }
  // Same key=value grammar as domain specs.
  const DomainSpec f = parse_domain_spec(spec);
  const auto& name = f.kind;
  if (name == "constant") {
    const double c = f.param("c", 1.0);
    return pointwise(omega, [c](const Point&) { return c; });
  }
  if (name == "coordinate") {
    const int k = static_cast<int>(f.param("k", 1));
    if (k != 1 && k != 2) throw Error("coordinate index must be 1 or 2");
    return pointwise(omega, [k](const Point& p) { return p(k - 1); });
  }
  if (name == "tent") {
    return ScalarField(omega.space, distance_to_complement(omega.space, omega.inside), omega.inside);
  }
  if (name == "arg") {
    return pointwise(omega, [](const Point& p) {
      const double a = std::atan2(p.y(), p.x());
      return a < 0 ? a + 2 * std::numbers::pi : a;
    });
  }
  if (name == "radial_power") {
    const double alpha = f.param("alpha", -0.5);
    const double h = omega.space.h();
    return pointwise(omega, [alpha, h](const Point& p) {
      const double r = p.norm();
      return std::pow(r < 1e-12 * h ? h / (2 * std::sqrt(2.0)) : r, alpha);
    });
  }
  if (name == "half_indicator") {
    const double a = f.param("a", 0.5);
    return pointwise(omega, [a](const Point& p) { return p.x() < a ? 1.0 : 0.0; });
  }
  if (name == "ball_indicator") {
    const Ball b(Point(f.param("x", 0), f.param("y", 0)), f.param("r", 0.5));
    return pointwise(omega, [b](const Point& p) { return b.contains(p) ? 1.0 : 0.0; });
  }
  if (name == "bump") {
    return pointwise(omega, [](const Point& p) { return std::exp(-p.squaredNorm()); });
  }
  throw Error("unknown function: " + name);
}

}  // namespace bvlab
