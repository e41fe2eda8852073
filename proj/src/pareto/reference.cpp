#include "pareto/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "model/errors.hpp"

namespace irp::pareto {

Normalization Normalization::of(const Archive& archive) {
  if (archive.empty()) throw ContractError("cannot normalize an empty archive");
  Normalization n;
  n.invMin_ = n.distMin_ = std::numeric_limits<double>::infinity();
  n.invMax_ = n.distMax_ = -std::numeric_limits<double>::infinity();
  for (const auto& e : archive.entries()) {
    n.invMin_ = std::min(n.invMin_, e.objectives.inventory);
    n.invMax_ = std::max(n.invMax_, e.objectives.inventory);
    n.distMin_ = std::min(n.distMin_, e.objectives.distance);
    n.distMax_ = std::max(n.distMax_, e.objectives.distance);
  }
  return n;
}

NormalizedPoint Normalization::operator()(const ObjectiveVector& o) const {
  auto scale = [](double x, double lo, double hi) { return hi > lo ? (x - lo) / (hi - lo) : 0.0; };
  return {scale(o.inventory, invMin_, invMax_), scale(o.distance, distMin_, distMax_)};
}

ReferencePointSet buildReferencePoints(int count, Weights weights) {
  if (count < 3 || count % 2 == 0) {
    throw ContractError("reference point count must be odd ≥ 3");
  }
  if (!(weights.inventory > 0.0) || !(weights.distance > 0.0)) {
    throw ContractError("Chebyshev weights must be positive");
  }
  ReferencePointSet refs;
  refs.weights = weights;
  refs.points = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
  const int k = (count - 3) / 2;
  for (int j = 1; j <= k; ++j) {
    refs.points.push_back({0.0, static_cast<double>(j) / (k + 1)});
  }
  for (int j = 1; j <= k; ++j) {
    refs.points.push_back({static_cast<double>(j) / (k + 1), 0.0});
  }
  return refs;
}

ReferencePointSet userReferencePoints(const std::vector<NormalizedPoint>& points,
                                      Weights weights) {
  if (!(weights.inventory > 0.0) || !(weights.distance > 0.0)) {
    throw ContractError("Chebyshev weights must be positive");
  }
  ReferencePointSet refs;
  refs.weights = weights;
  auto addUnique = [&](NormalizedPoint p) {
    if (std::find(refs.points.begin(), refs.points.end(), p) == refs.points.end()) {
      refs.points.push_back(p);
    }
  };
  for (const auto& p : points) {
    if (!(p.u >= 0.0 && p.u <= 1.0 && p.v >= 0.0 && p.v <= 1.0)) {
      throw ContractError("reference point outside [0,1]^2");
    }
    addUnique(p);
  }
  addUnique({0.0, 1.0});
  addUnique({1.0, 0.0});
  return refs;
}

double chebyshevDistance(const NormalizedPoint& p, const NormalizedPoint& r, const Weights& w) {
  return std::max(w.inventory * std::abs(p.u - r.u), w.distance * std::abs(p.v - r.v));
}

std::vector<std::size_t> selectRepresentatives(const Archive& archive,
                                               const ReferencePointSet& refs) {
  if (archive.empty()) return {};
  const auto norm = Normalization::of(archive);
  const auto entries = archive.entries();
  std::vector<NormalizedPoint> points;
  points.reserve(entries.size());
  for (const auto& e : entries) points.push_back(norm(e.objectives));

  std::set<std::size_t> chosen;
  for (const auto& r : refs.points) {
    std::size_t best = 0;
    double bestDist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double d = chebyshevDistance(points[k], r, refs.weights);
      const bool better =
          d < bestDist ||
          (d == bestDist && std::tie(points[k].u, points[k].v) <
                                std::tie(points[best].u, points[best].v));
      if (better) {
        best = k;
        bestDist = d;
      }
    }
    chosen.insert(best);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace irp::pareto
