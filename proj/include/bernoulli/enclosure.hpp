#pragma once

#include <functional>

#include "bernoulli/measure.hpp"

namespace bernoulli {

/// Certified interval [lo, hi] around a measure value, together with the
/// refinement depth that produced it.
struct MeasureEnclosure {
  Rational lo;
  Rational hi;
  unsigned generation = 0;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  static MeasureEnclosure point(const Rational& v, unsigned generation = 0) { return {v, v, generation}; }
};

constexpr unsigned kDefaultGenerationCap = 14;

enum class CellClass { Outside, Inside, Straddle };

/// Classifies a closed cube [lo, lo + side]^N against a set. Inside means
/// the cube lies in the set up to a null boundary, Outside means they share
/// at most a null set.
using CellClassifier = std::function<CellClass(const RationalVector& lo, const Rational& side)>;

/// Inner/outer cover of a set by cubes of generation <= g: lo sums the
/// cubes classified Inside, hi additionally the cubes still straddling at
/// generation g. The set must lie within [bbox_lo, bbox_hi].
MeasureEnclosure classify_enclosure(const Measure& measure, const RationalVector& bbox_lo,
                                    const RationalVector& bbox_hi, const CellClassifier& classify,
                                    unsigned generation, unsigned generation_cap = kDefaultGenerationCap);

}  // namespace bernoulli
