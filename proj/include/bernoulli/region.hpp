#pragma once

#include <cstddef>
#include <vector>

#include "bernoulli/measure.hpp"

namespace bernoulli {

/// normal . y <= offset, with normal in {-1, 0, 1}^N.
struct HalfSpace {
  std::vector<int> normal;
  Rational offset;
};

/// Bounded intersection of half-spaces whose normals have entries in
/// {-1, 0, 1}. Axis boxes and l1 balls are both of this form.
struct Region {
  unsigned dim = 0;
  std::vector<HalfSpace> constraints;
  RationalVector bbox_lo;
  RationalVector bbox_hi;
};

Region box_region(const AxisBox& box);
Region l1_ball_region(const RationalVector& center, const Rational& radius);

constexpr std::size_t kDefaultUnitCellCap = 1'000'000;

/// Exact measure of a region with rational data.
///
/// Inside a unit cell, the region rescaled to a child cube is again a region
/// of the same shape with offsets p * c - normal . d. Offsets stay inside a
/// bounded window with a fixed denominator, so only finitely many rescaled
/// states occur. Their relative measures satisfy F(s) = sum_nu p_nu F(child),
/// which is solved exactly one strongly connected component at a time.
/// Region boundaries carry no mass (every p_nu > 0), so open and closed
/// versions of a region get the same value.
Rational region_measure(const Measure& measure, const Region& region,
                        std::size_t max_unit_cells = kDefaultUnitCellCap);

}  // namespace bernoulli
