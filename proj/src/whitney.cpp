#include "bvlab/whitney.hpp"

#include "bvlab/distance.hpp"
#include "bvlab/traces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bvlab {

namespace {

double whitney_radius(double d, double lambda, double R) { return std::min(d / (20.0 * lambda), R); }

void require_grid(const GridSpace& a, const GridSpace& b) {
  if (!a.same_grid(b)) throw Error("field and cover live on different grids");
}

}  // namespace

WhitneyCover build_cover(const DomainMask& omega, double R, double lambda, double min_radius) {
  if (lambda < 1.0) throw Error("lambda must be at least 1");
  if (!(R > 0.0)) throw Error("cover scale must be positive");
  if (omega.count() == 0) throw Error("empty domain");

  const GridSpace& s = omega.space;
  WhitneyCover cover{omega, distance_to_complement(s, omega.inside), {}, {}, R, lambda, 0, {}};

  struct Candidate {
    int shell;
    Index index;
    double r;
  };
  std::vector<Candidate> order;
  order.reserve(static_cast<size_t>(omega.count()));
  double rmax = 0.0;
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i)
      if (omega.inside(i, j)) rmax = std::max(rmax, whitney_radius(cover.dist(i, j), lambda, R));
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) {
      if (!omega.inside(i, j)) continue;
      const double r = whitney_radius(cover.dist(i, j), lambda, R);
      if (r < min_radius) {
        cover.excluded.push_back({i, j});
        continue;
      }
      // Capped cells form their own leading shell.
      const int shell = r == R ? 0 : 1 + static_cast<int>(std::floor(std::log2(rmax / r)));
      order.push_back({shell, j * s.nx() + i, r});
    }
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidate& a, const Candidate& b) { return a.shell < b.shell; });

  CellMask covered = CellMask::Constant(s.nx(), s.ny(), false);
  for (const Candidate& c : order) {
    const Index i = c.index % s.nx(), j = c.index / s.nx();
    if (covered(i, j)) continue;
    const Ball b(s.center(i, j), c.r);
    cover.balls.push_back(b);
    cover.centers.push_back({i, j});
    s.for_each_in_ball(b, [&](Index a, Index k) { covered(a, k) = true; });
  }
  cover.overlap_C0 = overlap_count(cover, 5.0 * lambda);
  return cover;
}

int overlap_count(const WhitneyCover& cover, double tau) {
  const GridSpace& s = cover.domain.space;
  // Per-row difference array: +1 at the first cell of each span, -1 past it.
  Field<int> diff = Field<int>::Zero(s.nx() + 1, s.ny());
  for (const Ball& b : cover.balls) {
    const Ball big = b.dilate(tau);
    Index jlo = 0, jhi = -1;
    s.row_range(big, jlo, jhi);
    for (Index j = jlo; j <= jhi; ++j) {
      Index ilo = 0, ihi = -1;
      if (!s.row_span(big, j, ilo, ihi)) continue;
      ++diff(ilo, j);
      --diff(ihi + 1, j);
    }
  }
  int best = 0;
  for (Index j = 0; j < s.ny(); ++j) {
    int run = 0;
    for (Index i = 0; i < s.nx(); ++i) best = std::max(best, run += diff(i, j));
  }
  return best;
}

CoverCheck verify_cover(const WhitneyCover& cover) {
  CoverCheck out;
  const DomainMask& omega = cover.domain;
  const GridSpace& s = omega.space;
  const double lam = cover.lambda;

  CellMask hit = CellMask::Constant(s.nx(), s.ny(), false);
  for (const Cell& c : cover.excluded) hit(c.i, c.j) = true;
  for (const Ball& b : cover.balls) s.for_each_in_ball(b, [&](Index i, Index j) { hit(i, j) = true; });
  out.covering = !(omega.inside && !hit).any();

  // Ball ids by center cell, for the pair search.
  Field<int> id = Field<int>::Constant(s.nx(), s.ny(), -1);
  for (size_t k = 0; k < cover.balls.size(); ++k) {
    const Cell& c = cover.centers[k];
    id(c.i, c.j) = static_cast<int>(k);
    const double d = cover.dist(c.i, c.j);
    const double r = cover.balls[k].radius;
    if (!(r > 0.0) || r != whitney_radius(d, lam, cover.scale_R)) out.radius_rule = false;
    // Distance from a ball to a closed set is the center distance minus r.
    if (d - 2.0 * r < 18.0 * lam * r * (1.0 - 1e-12)) out.separated = false;
  }

  for (size_t k = 0; k < cover.balls.size(); ++k) {
    const Ball& bk = cover.balls[k];
    // Partners no larger than B_k meet 5 lambda B_k only within 10 lambda r_k.
    s.for_each_in_ball(bk.dilate(10.0 * lam), [&](Index i, Index j) {
      const int m = id(i, j);
      if (m < 0 || static_cast<size_t>(m) == k) return;
      const Ball& bm = cover.balls[static_cast<size_t>(m)];
      if (bm.radius > bk.radius) return;
      const double reach = 5.0 * lam * (bk.radius + bm.radius);
      if ((bk.center - bm.center).squaredNorm() >= reach * reach) return;
      ++out.pairs_checked;
      if (bk.radius > 2.0 * bm.radius) out.comparable = false;
    });
  }
  return out;
}

PartitionOfUnity::PartitionOfUnity(const WhitneyCover& cover)
    : cover_(&cover), sum_(RealField::Zero(cover.domain.space.nx(), cover.domain.space.ny())) {
  for (size_t j = 0; j < cover.balls.size(); ++j)
    for_each_support_cell(j, [&](Index a, Index b, double v) { sum_(a, b) += v; });
  CellMask excluded = CellMask::Constant(sum_.rows(), sum_.cols(), false);
  for (const Cell& c : cover.excluded) excluded(c.i, c.j) = true;
  if ((cover.domain.inside && !excluded && sum_ <= 0.0).any()) throw Error("cover defect");
}

double PartitionOfUnity::psi(size_t j, const Point& y) const {
  const Ball& b = cover_->balls[j];
  const double gap = std::max(0.0, (y - b.center).norm() - b.radius);
  return std::max(0.0, 1.0 - gap / b.radius);
}

std::vector<std::pair<Cell, double>> PartitionOfUnity::phi(size_t j) const {
  std::vector<std::pair<Cell, double>> out;
  for_each_support_cell(j, [&](Index a, Index b, double v) { out.push_back({{a, b}, v / sum_(a, b)}); });
  return out;
}

double PartitionOfUnity::lipschitz_constant(size_t stride) const {
  const GridSpace& s = cover_->domain.space;
  const CellMask& in = cover_->domain.inside;
  const double h = s.h();
  double C = 0.0;
  auto value = [&](size_t j, Index a, Index b) {
    if (!s.in_grid(a, b) || !in(a, b) || sum_(a, b) <= 0.0) return 0.0;
    return psi(j, s.center(a, b)) / sum_(a, b);
  };
  for (size_t j = 0; j < cover_->balls.size(); j += std::max<size_t>(stride, 1)) {
    const Ball& b = cover_->balls[j];
    s.for_each_in_ball(Ball(b.center, 2.0 * b.radius + 1.5 * h), [&](Index a, Index k) {
      if (!in(a, k)) return;
      const double v = value(j, a, k);
      const double dv = std::max(std::abs(v - value(j, a + 1, k)), std::abs(v - value(j, a, k + 1)));
      C = std::max(C, dv / h * b.radius);
    });
  }
  return C;
}

DiscreteConvolution discrete_convolution(const ScalarField& u, const PartitionOfUnity& pou,
                                         const RealField* tv_density) {
  const WhitneyCover& cover = pou.cover();
  const GridSpace& s = cover.domain.space;
  require_grid(s, u.space);
  const CellMask& in = cover.domain.inside;
  const RealField& m = s.mass();

  const CellMask live = in && u.support;
  const BallSums mass_sums(s, live.select(m, 0.0));
  const BallSums u_sums(s, live.select(u.values * m, 0.0));
  const BallSums tv_sums(s, tv_density ? *tv_density : variation_density(u));

  DiscreteConvolution out{ScalarField(s, RealField::Zero(s.nx(), s.ny()), in),
                          RealField::Zero(s.nx(), s.ny()), {}};
  out.ball_means.resize(cover.balls.size());
  RealField num = RealField::Zero(s.nx(), s.ny());
  for (size_t j = 0; j < cover.balls.size(); ++j) {
    const Ball& b = cover.balls[j];
    const double mb = mass_sums(b);
    const double mean = mb > 0 ? u_sums(b) / mb : 0.0;
    out.ball_means[j] = mean;
    pou.for_each_support_cell(j, [&](Index a, Index k, double v) { num(a, k) += mean * v; });
    const double ratio = mb > 0 ? tv_sums(b.dilate(5.0 * cover.lambda)) / mass_sums(b) : 0.0;
    s.for_each_in_ball(b, [&](Index a, Index k) { out.upper_gradient(a, k) += ratio; });
  }
  const RealField& S = pou.normaliser();
  out.u_W.values = (in && S > 0.0).select(num / S, 0.0);
  out.upper_gradient = in.select(out.upper_gradient, 0.0);
  return out;
}

double boundary_chain_ratio(const ScalarField& u, const ScalarField& u_W, const RealField& tv_density,
                            const Point& x, double r) {
  require_grid(u.space, u_W.space);
  const GridSpace& s = u.space;
  const RealField& m = s.mass();
  double diff = 0.0, mass_in = 0.0, mass_ball = 0.0, tv = 0.0, scale = 0.0;
  s.for_each_in_ball(Ball(x, r), [&](Index i, Index j) {
    mass_ball += m(i, j);
    if (!u.support(i, j) || !u_W.support(i, j)) return;
    mass_in += m(i, j);
    diff += std::abs(u.values(i, j) - u_W.values(i, j)) * m(i, j);
    scale = std::max(scale, std::abs(u.values(i, j)));
  });
  s.for_each_in_ball(Ball(x, 2.0 * r), [&](Index i, Index j) {
    if (u.support(i, j)) tv += tv_density(i, j);
  });
  if (mass_in <= 0.0) throw Error("no interior mass at resolution");
  const double num = diff / mass_in;
  const double den = r * tv / mass_ball;
  // Rounding in sum_j phi_j = 1 is not a boundary defect.
  if (num <= 1e-12 * scale) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

PastedApproximation pasted_approximation(const ScalarField& u, const std::vector<WhitneyCover>& covers,
                                         double delta, const Point& anchor) {
  if (covers.empty()) throw Error("no covers given");
  const DomainMask& omega = covers.front().domain;
  const GridSpace& s = omega.space;
  require_grid(s, u.space);
  if (delta < 8.0 * s.h()) throw Error("delta below resolution");

  const DomainMask inner = shrink_domain(omega, 0.5 * delta);
  CellMask target = inner.inside;
  const Ball far(anchor, 2.0 / delta);
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i)
      if (target(i, j) && !far.contains(s.center(i, j))) target(i, j) = false;
  if (!target.any()) throw Error("over-shrunk domain");
  const RealField eta = (1.0 - (4.0 / delta) * distance_to_cells(s, target)).max(0.0);

  const ScalarField uo(s, omega.inside.select(u.values, 0.0), omega.inside);
  const double tv_u = total_variation(uo).total;
  PastedApproximation out;
  for (const WhitneyCover& cover : covers) {
    const PartitionOfUnity pou(cover);
    const DiscreteConvolution conv = discrete_convolution(uo, pou);
    ScalarField v(s, eta * uo.values + (1.0 - eta) * conv.u_W.values, omega.inside);
    out.l1_gap.push_back(
        omega.inside.select((v.values - uo.values).abs() * s.mass(), 0.0).sum());
    const double tv_v = total_variation(v).total;
    out.tv_gap.push_back(tv_u > 0 ? std::abs(tv_v - tv_u) / tv_u : std::abs(tv_v - tv_u));
    out.fields.push_back(std::move(v));
  }
  return out;
}

ScalarField truncate(const ScalarField& u, double n) {
  if (!(n > 0.0)) throw Error("truncation level must be positive");
  return ScalarField(u.space, u.values.max(-n).min(n), u.support);
}

CompactSupportResult compact_support_approximation(const ScalarField& u, const DomainMask& omega,
                                                   double delta, double R, double lambda) {
  const GridSpace& s = omega.space;
  require_grid(s, u.space);
  if (!zero_trace_check(u, omega, omega.boundary_samples(64)).all_pass()) throw Error("not in BV0");

  const ScalarField uo(s, omega.inside.select(u.values, 0.0), omega.inside);
  const RealField d = distance_to_complement(s, omega.inside);
  if (delta < 2.0 * s.h()) throw Error("delta below resolution");
  if (!(omega.inside && d > 2.0 * delta).any()) throw Error("over-shrunk domain");

  const WhitneyCover cover = build_cover(omega, R, lambda);
  const PartitionOfUnity pou(cover);
  const DiscreteConvolution conv = discrete_convolution(uo, pou);
  const RealField eta = ((d - delta) / delta).max(0.0).min(1.0);
  const RealField zeta = (2.0 * (d - delta) / delta).max(0.0).min(1.0);

  CompactSupportResult out{
      ScalarField(s, eta * uo.values + (1.0 - eta) * zeta * conv.u_W.values, omega.inside), delta, 0, 0, 0};
  const ScalarField diff(s, out.field.values - uo.values, omega.inside);
  out.l1_gap = diff.l1();
  out.tv_gap = total_variation(diff).total;
  out.bv_norm = uo.l1() + total_variation(uo).total;
  return out;
}

nlohmann::json to_json(const WhitneyCover& cover) {
  nlohmann::json balls = nlohmann::json::array();
  for (const Ball& b : cover.balls) balls.push_back({b.center.x(), b.center.y(), b.radius});
  nlohmann::json excluded = nlohmann::json::array();
  for (const Cell& c : cover.excluded) excluded.push_back({c.i, c.j});
  return {{"domain", cover.domain.name},
          {"grid", to_json(cover.domain.space)},
          {"scale_R", std::isfinite(cover.scale_R) ? nlohmann::json(cover.scale_R) : nlohmann::json("inf")},
          {"lambda", cover.lambda},
          {"overlap_C0", cover.overlap_C0},
          {"balls", balls},
          {"excluded", excluded}};
}

}  // namespace bvlab
