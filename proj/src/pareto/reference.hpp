#pragma once

#include <cstddef>
#include <vector>

#include "pareto/archive.hpp"

namespace irp::pareto {

// Objective vector scaled into [0,1]^2 by the archive's extremes.
struct NormalizedPoint {
  double u = 0.0;  // inventory
  double v = 0.0;  // distance

  friend bool operator==(const NormalizedPoint&, const NormalizedPoint&) = default;
};

struct Weights {
  double inventory = 1.0;
  double distance = 1.0;
};

// Min-max scaling over an archive. A degenerate objective maps to 0.
class Normalization {
public:
  // Throws ContractError on an empty archive.
  static Normalization of(const Archive& archive);

  NormalizedPoint operator()(const ObjectiveVector& o) const;

  double inventoryMin() const { return invMin_; }
  double inventoryMax() const { return invMax_; }
  double distanceMin() const { return distMin_; }
  double distanceMax() const { return distMax_; }

private:
  double invMin_ = 0.0, invMax_ = 0.0, distMin_ = 0.0, distMax_ = 0.0;
};

struct ReferencePointSet {
  std::vector<NormalizedPoint> points;
  Weights weights;

  std::size_t count() const { return points.size(); }
};

// Canonical layout for R = 3 + 2k: the ideal point (0,0), the two extreme
// corners (0,1) and (1,0), and k equally spaced points on each axis between
// the ideal point and the corner. Throws ContractError unless R is odd and
// at least 3.
ReferencePointSet buildReferencePoints(int count, Weights weights = {});

// User-chosen points plus the two extreme corners, so both ends of the front
// keep being searched. Throws ContractError on points outside [0,1]^2.
ReferencePointSet userReferencePoints(const std::vector<NormalizedPoint>& points,
                                      Weights weights = {});

double chebyshevDistance(const NormalizedPoint& p, const NormalizedPoint& r, const Weights& w);

// Indices into archive.entries() of the entries closest to each reference
// point, deduplicated and ascending. Ties go to the smaller normalized
// inventory, then the smaller normalized distance.
std::vector<std::size_t> selectRepresentatives(const Archive& archive,
                                               const ReferencePointSet& refs);

}  // namespace irp::pareto
