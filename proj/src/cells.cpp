#include "bernoulli/enclosure.hpp"

namespace bernoulli {

namespace {

struct Descent {
  const Measure& measure;
  const CellClassifier& classify;
  unsigned generation;
  Rational lo = 0;
  Rational hi = 0;

  void visit(const RationalVector& corner, const Rational& side, const Rational& mass, unsigned depth) {
    switch (classify(corner, side)) {
      case CellClass::Outside: return;
      case CellClass::Inside:
        lo += mass;
        hi += mass;
        return;
      case CellClass::Straddle: break;
    }
    if (depth == generation) {
      hi += mass;
      return;
    }
    const unsigned p = measure.p();
    const Rational child_side = side / p;
    RationalVector child(corner.size());
    for (std::size_t i = 0; i < measure.child_count(); ++i) {
      for (unsigned j = 0; j < measure.dim(); ++j) child[j] = corner[j] + child_side * measure.digit(i, j);
      visit(child, child_side, mass * measure.probability(i), depth + 1);
    }
  }
};

}  // namespace

MeasureEnclosure classify_enclosure(const Measure& measure, const RationalVector& bbox_lo,
                                    const RationalVector& bbox_hi, const CellClassifier& classify,
                                    unsigned generation, unsigned generation_cap) {
  if (generation > generation_cap) {
    throw Error(ErrorCode::GenerationTooLarge,
                "generation " + std::to_string(generation) + " exceeds cap " + std::to_string(generation_cap));
  }
  const unsigned n = measure.dim();
  if (bbox_lo.size() != n || bbox_hi.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "bounding box and measure differ in dimension");
  }
  const Rational half(1, 2);
  std::vector<long long> first(n), count(n);
  std::size_t cells = 1;
  for (unsigned j = 0; j < n; ++j) {
    first[j] = to_int64(floor(bbox_lo[j] + half));
    const long long last = to_int64(floor(bbox_hi[j] + half));
    count[j] = last - first[j] + 1;
    cells *= static_cast<std::size_t>(count[j]);
  }
  Descent descent{measure, classify, generation};
  std::vector<long long> z(first);
  RationalVector corner(n);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (unsigned j = 0; j < n; ++j) corner[j] = Rational(static_cast<long>(z[j])) - half;
    descent.visit(corner, Rational(1), Rational(1), 0);
    for (unsigned j = n; j-- > 0;) {
      if (++z[j] < first[j] + count[j]) break;
      z[j] = first[j];
    }
  }
  return {descent.lo, descent.hi, generation};
}

}  // namespace bernoulli
