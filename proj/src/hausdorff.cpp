#include "bvlab/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace bvlab {

namespace {

// Uniform bucket grid over the target points.
class PointBuckets {
 public:
  PointBuckets(const std::vector<Point>& pts, double size) : pts_(pts), size_(size) {
    lo_ = pts.front();
    Point hi = pts.front();
    for (const auto& p : pts) {
      lo_ = lo_.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    nx_ = static_cast<Index>(std::floor((hi.x() - lo_.x()) / size)) + 1;
    ny_ = static_cast<Index>(std::floor((hi.y() - lo_.y()) / size)) + 1;
    start_.assign(static_cast<size_t>(nx_ * ny_) + 1, 0);
    std::vector<Index> key(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) {
      key[k] = bucket_of(pts[k]);
      ++start_[static_cast<size_t>(key[k]) + 1];
    }
    for (size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    items_.resize(pts.size());
    std::vector<Index> fill(start_.begin(), start_.end() - 1);
    for (size_t k = 0; k < pts.size(); ++k) items_[static_cast<size_t>(fill[key[k]]++)] = static_cast<Index>(k);
  }

  Index bucket_of(const Point& p) const {
    const auto bx = std::clamp<Index>(static_cast<Index>(std::floor((p.x() - lo_.x()) / size_)), 0, nx_ - 1);
    const auto by = std::clamp<Index>(static_cast<Index>(std::floor((p.y() - lo_.y()) / size_)), 0, ny_ - 1);
    return by * nx_ + bx;
  }

  Index buckets() const { return nx_ * ny_; }

  /// Indices of points in bucket b, in ascending order.
  template <typename F>
  void for_bucket(Index b, F&& f) const {
    for (Index s = start_[b]; s < start_[b + 1]; ++s) f(items_[static_cast<size_t>(s)]);
  }

  template <typename F>
  void for_each_in_ball(const Ball& ball, F&& f) const {
    const double r2 = ball.radius * ball.radius;
    const auto bx0 = std::max<Index>(0, static_cast<Index>(std::floor((ball.center.x() - ball.radius - lo_.x()) / size_)));
    const auto bx1 = std::min<Index>(nx_ - 1, static_cast<Index>(std::floor((ball.center.x() + ball.radius - lo_.x()) / size_)));
    const auto by0 = std::max<Index>(0, static_cast<Index>(std::floor((ball.center.y() - ball.radius - lo_.y()) / size_)));
    const auto by1 = std::min<Index>(ny_ - 1, static_cast<Index>(std::floor((ball.center.y() + ball.radius - lo_.y()) / size_)));
    for (Index by = by0; by <= by1; ++by) {
      for (Index bx = bx0; bx <= bx1; ++bx) {
        for_bucket(by * nx_ + bx, [&](Index k) {
          if ((pts_[static_cast<size_t>(k)] - ball.center).squaredNorm() < r2) f(k);
        });
      }
    }
  }

 private:
  const std::vector<Point>& pts_;
  double size_;
  Point lo_;
  Index nx_ = 1, ny_ = 1;
  std::vector<Index> start_;
  std::vector<Index> items_;
};

struct Candidate {
  double ratio;
  Index id;
  bool operator<(const Candidate& o) const {
    // max-heap on "worse", so the best (smallest ratio, then smallest id) is on top
    if (ratio != o.ratio) return ratio > o.ratio;
    return id > o.id;
  }
};

}  // namespace

std::vector<double> cover_radii(double h, double R) {
  if (R < 4.0 * h * (1.0 - 1e-12)) throw Error("cover scale below resolution (R < 4h)");
  std::vector<double> radii;
  double r = 4.0 * h;
  for (; r <= R * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
  if (radii.back() < R * (1.0 - 1e-12)) radii.push_back(R);
  return radii;
}

std::vector<Point> cell_centers(const GridSpace& space, const CellMask& cells) {
  std::vector<Point> pts;
  for (Index j = 0; j < space.ny(); ++j)
    for (Index i = 0; i < space.nx(); ++i)
      if (cells(i, j)) pts.push_back(space.center(i, j));
  return pts;
}

CoverSolution content_HR(const GridSpace& space, const std::vector<Point>& target, double R,
                         const CellMask* mask) {
  if (target.empty()) throw Error("empty target set");
  const auto radii = cover_radii(space.h(), R);
  const RealField per_cell = mask ? RealField(mask->select(space.mass(), 0.0)) : space.mass();
  const BallSums sums(space, per_cell);
  const PointBuckets buckets(target, radii.front());

  // Candidate balls: every target point at the smallest radius, one
  // representative per r/4-bucket at larger radii.
  std::vector<Ball> cand;
  std::vector<double> cost;
  for (size_t ri = 0; ri < radii.size(); ++ri) {
    const double r = radii[ri];
    auto add = [&](const Point& c) {
      cand.emplace_back(c, r);
      cost.push_back(sums(Ball(c, r)) / r);
    };
    if (ri == 0) {
      for (const auto& p : target) add(p);
    } else {
      const PointBuckets coarse(target, 0.25 * r);
      for (Index b = 0; b < coarse.buckets(); ++b) {
        bool first = true;
        coarse.for_bucket(b, [&](Index k) {
          if (first) add(target[static_cast<size_t>(k)]);
          first = false;
        });
      }
    }
  }

  CoverSolution sol;
  sol.scale_R = R;
  sol.lower_bound = std::numeric_limits<double>::infinity();
  for (double c : cost) sol.lower_bound = std::min(sol.lower_bound, c);

  std::vector<char> covered(target.size(), 0);
  size_t remaining = target.size();
  auto gain_of = [&](Index id) {
    Index g = 0;
    buckets.for_each_in_ball(cand[static_cast<size_t>(id)], [&](Index k) {
      if (!covered[static_cast<size_t>(k)]) ++g;
    });
    return g;
  };

  std::priority_queue<Candidate> heap;
  for (size_t id = 0; id < cand.size(); ++id) {
    const Index g = gain_of(static_cast<Index>(id));
    if (g > 0) heap.push({cost[id] / static_cast<double>(g), static_cast<Index>(id)});
  }
  // Lazy greedy: gains only shrink, so a stale ratio is a lower bound.
  while (remaining > 0 && !heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    const Index g = gain_of(top.id);
    if (g == 0) continue;
    const double ratio = cost[static_cast<size_t>(top.id)] / static_cast<double>(g);
    if (!heap.empty() && ratio > heap.top().ratio) {
      heap.push({ratio, top.id});
      continue;
    }
    const Ball& b = cand[static_cast<size_t>(top.id)];
    buckets.for_each_in_ball(b, [&](Index k) {
      if (!covered[static_cast<size_t>(k)]) {
        covered[static_cast<size_t>(k)] = 1;
        --remaining;
      }
    });
    sol.balls.push_back(b);
    sol.content += cost[static_cast<size_t>(top.id)];
  }
  if (remaining > 0) throw Error("cover defect");
  return sol;
}

CoverSolution content_HR(const GridSpace& space, const CellMask& target, double R, const CellMask* mask) {
  return content_HR(space, cell_centers(space, target), R, mask);
}

HausdorffEstimate measure_H(const GridSpace& space, const std::vector<Point>& target,
                            const std::vector<double>& R_sequence, const CellMask* mask,
                            double divergence_slope) {
  if (R_sequence.empty()) throw Error("empty scale sequence");
  for (size_t k = 1; k < R_sequence.size(); ++k)
    if (!(R_sequence[k] < R_sequence[k - 1])) throw Error("scale sequence must decrease");
  HausdorffEstimate est;
  est.variant = mask ? "mu_bar" : "mu";
  for (double R : R_sequence) est.values.emplace_back(R, content_HR(space, target, R, mask).content);
  est.extrapolated = est.values.back().second;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [R, H] : est.values) {
    if (!(H > 0.0)) continue;
    const double x = std::log(1.0 / R), y = std::log(H);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && n * sxx - sx * sx > 0.0) {
    est.growth_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.divergent = est.growth_exponent > divergence_slope && est.values.back().second > est.values.front().second;
  }
  return est;
}

nlohmann::json to_json(const CoverSolution& cover) {
  nlohmann::json balls = nlohmann::json::array();
  for (const auto& b : cover.balls) balls.push_back({b.center.x(), b.center.y(), b.radius});
  return {{"balls", balls}, {"content", cover.content}, {"scale_R", cover.scale_R},
          {"lower_bound", cover.lower_bound}};
}

}  // namespace bvlab
