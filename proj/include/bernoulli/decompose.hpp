#pragma once

#include <vector>

#include "bernoulli/enclosure.hpp"
#include "bernoulli/measure.hpp"

namespace bernoulli {

/// Exact decomposition of a grid box into maximal p-adic cubes, coarsest
/// first, ties broken by the lexicographic order of lower corners. Throws
/// NotGridRational when an endpoint has no finite base-p expansion relative
/// to the -1/2 offset grid.
std::vector<PAdicCube> box_decompose(const AxisBox& box, unsigned p);

/// Sum of cube measures over box_decompose.
Rational box_measure_exact(const Measure& measure, const AxisBox& box);

/// Exact measure of any rational box through the region engine.
Rational box_measure(const Measure& measure, const AxisBox& box);

/// Inner and outer generation-g cube covers of the box.
MeasureEnclosure box_measure_enclosure(const Measure& measure, const AxisBox& box, unsigned generation,
                                       unsigned generation_cap = kDefaultGenerationCap);

/// The coordinate strip of `parent` restricted to [offset, offset + thickness)
/// along `axis`.
AxisBox strip_box(const PAdicCube& parent, unsigned axis, const Rational& offset, const Rational& thickness);

/// p^n * h * mu(parent) for a strip inside a generation-n cube. Only valid for
/// the annular decay family; the value is cross-checked against the region
/// engine and InternalInconsistency is thrown on disagreement.
Rational strip_measure(const Measure& measure, const PAdicCube& parent, unsigned axis, const Rational& offset,
                       const Rational& thickness);

}  // namespace bernoulli
