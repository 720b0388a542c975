#pragma once

#include "bvlab/core.hpp"

#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace bvlab {

/// Omega = {0 < z1 < 1, |z2| < z1^beta} in the plane with d mu = |z|^alpha dL^2.
struct CuspParams {
  double beta = 2.0;
  double alpha = 0.0;

  double height(double z1) const;
  bool in_closure(const Point& z, double slack = 0.0) const;
  double distance_to_closure(const Point& z) const;
};

enum class SemmesCase { pencil = 1, parabola = 2, converging = 3 };

/// Case of gamma_s(t) by the three conditions, first match wins:
/// pencil: y1 - z1 >= z1^beta and (z1, t) in the closure; parabola: y1 - z1 >= z1^beta
/// otherwise; converging: y1 - z1 < z1^beta. Here z1 = x1 + t.
SemmesCase semmes_case(double x1, double y1, double t, const CuspParams& cusp = {});

/// gamma_s(t) = (x1 + t, s g(t)) with g(t) = min{t, z1^beta, y1 - z1}. This is the
/// casewise formula wherever that one is continuous; where the pencil from x
/// would jump straight onto the converging pencil it runs on until they meet.
double semmes_profile(double x1, double y1, double t, const CuspParams& cusp = {});
Point semmes_point(double x1, double y1, double s, double t, const CuspParams& cusp = {});

struct SemmesCurve {
  double s = 0.0;
  std::vector<Point> points;  // at t = k dt, k = 0..n_samples
  std::vector<SemmesCase> cases;
};

struct CurveFamily {
  double x1 = 0.0, y1 = 0.0;
  CuspParams cusp;
  int n_samples = 0;
  double dt = 0.0;
  std::vector<SemmesCurve> curves;  // s at the midpoints of n_curves cells of (-1, 1)
  std::vector<double> alpha;        // probability weights, 1/2 ds each
  double speed_bound = 1.0;         // |gamma'| <= speed_bound
  bool casewise_jump = false;       // the casewise formula is discontinuous for this pair

  Point x() const { return Point(x1, 0.0); }
  Point y() const { return Point(y1, 0.0); }
  double length() const { return y1 - x1; }
};

/// Needs 0 < x1 < y1 < 1.
CurveFamily build_family(double x1, double y1, int n_curves = 256, int n_samples = 512, const CuspParams& cusp = {});
/// Endpoints off the axis are rejected.
CurveFamily build_family(const Point& x, const Point& y, int n_curves = 256, int n_samples = 512,
                         const CuspParams& cusp = {});

/// Largest distance from a polyline node to the closure of Omega.
double max_distance_to_closure(const CurveFamily& f);
/// Extremes of |segment| / dt over all polyline segments.
std::pair<double, double> speed_range(const CurveFamily& f);

using Rect = Eigen::AlignedBox2d;

/// int int chi_A(gamma(t)) dt d alpha(gamma), midpoint rule in t and s.
double curve_occupation(const CurveFamily& f, const Rect& A);

/// mu(B(c, r) cap Omega) for c on the axis.
double cusp_ball_mass(const CuspParams& cusp, double c1, double r);

/// d(z, c)/mu(B(c, d(z, c)) cap Omega), tabulated in r.
class RieszKernel {
 public:
  RieszKernel(const CuspParams& cusp, double c1, int table_size = 400);
  double operator()(const Point& z) const;
  double ball_mass(double r) const;

 private:
  CuspParams cusp_;
  double c1_;
  std::vector<double> log_r_, log_m_;
};

/// int_{A cap Omega} K_x + K_y d mu, midpoint on an n x n grid per rectangle.
double riesz_integral(const CurveFamily& f, const Rect& A, int n = 64);

struct SemmesCheck {
  std::vector<double> lhs, rhs, ratio;
  double C = 0.0;                 // max ratio
  std::vector<size_t> violations;  // rhs = 0 < lhs
};

SemmesCheck check_semmes_condition(const CurveFamily& f, const std::vector<Rect>& sets, int rhs_quadrature = 64);

/// n rectangles with centres log-spaced in z1 from 1.6 x1 to 0.95 y1, half-width
/// 0.15 z1, cycling through the full cusp width, its upper half and the
/// middle quarter.
std::vector<Rect> tip_rectangles(const CurveFamily& f, int n = 50);

struct KernelBoundCheck {
  std::vector<Point> points;
  std::vector<double> ratio;  // 8 z1^2 K_x(z), >= 1 claimed
  double min_ratio = 0.0;
};

/// Deterministic points in the parabola regime of f (z1 strictly between the
/// regime ends, z2 spread over the cusp width).
KernelBoundCheck kernel_lower_bound_check(const CurveFamily& f, int n_points = 100);

void write_family_csv(const CurveFamily& f, const std::string& path);
nlohmann::json to_json(const SemmesCheck& c);

}  // namespace bvlab
