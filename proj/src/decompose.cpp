#include "bernoulli/decompose.hpp"

#include <algorithm>

#include "bernoulli/coeff_solver.hpp"
#include "bernoulli/region.hpp"

namespace bernoulli {

namespace {

// Box in integer units of p^-depth, shifted so the grid starts at 0.
struct ScaledBox {
  std::vector<Integer> lo;
  std::vector<Integer> hi;
};

void descend(const ScaledBox& box, unsigned p, unsigned depth, unsigned level, std::vector<Integer>& corner,
             const Integer& side, std::vector<std::pair<unsigned, std::vector<Integer>>>& out) {
  bool inside = true;
  for (std::size_t j = 0; j < corner.size(); ++j) {
    const Integer end = corner[j] + side;
    if (end <= box.lo[j] || corner[j] >= box.hi[j]) return;
    if (corner[j] < box.lo[j] || end > box.hi[j]) inside = false;
  }
  if (inside) {
    out.emplace_back(level, corner);
    return;
  }
  if (level == depth) throw Error(ErrorCode::InternalInconsistency, "grid box not resolved at its own depth");
  const Integer child = side / p;
  const std::size_t n = corner.size();
  std::vector<unsigned> digits(n, 0);
  const std::vector<Integer> base = corner;
  while (true) {
    for (std::size_t j = 0; j < n; ++j) corner[j] = base[j] + child * digits[j];
    descend(box, p, depth, level + 1, corner, child, out);
    std::size_t j = n;
    while (j-- > 0) {
      if (++digits[j] < p) break;
      digits[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  corner = base;
}

}  // namespace

std::vector<PAdicCube> box_decompose(const AxisBox& box, unsigned p) {
  const std::size_t n = box.dim();
  const Rational half(1, 2);
  int depth = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (const Rational* t : {&box.lo()[j], &box.hi()[j]}) {
      const int e = padic_exponent(*t + half, p);
      if (e < 0) throw Error(ErrorCode::NotGridRational, to_string(*t) + " is not a grid rational for p = " + std::to_string(p));
      depth = std::max(depth, e);
    }
  }
  const unsigned d = static_cast<unsigned>(depth);
  const Integer scale = ipow(Integer(p), d);
  ScaledBox scaled;
  std::vector<long long> first(n), last(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational lo = (box.lo()[j] + half) * Rational(scale);
    const Rational hi = (box.hi()[j] + half) * Rational(scale);
    scaled.lo.push_back(lo.get_num());
    scaled.hi.push_back(hi.get_num());
    first[j] = to_int64(floor(box.lo()[j] + half));
    last[j] = to_int64(ceil(box.hi()[j] + half)) - 1;
  }

  std::vector<std::pair<unsigned, std::vector<Integer>>> found;
  std::vector<long long> z(first);
  while (true) {
    std::vector<Integer> corner(n);
    for (std::size_t j = 0; j < n; ++j) corner[j] = Integer(static_cast<long>(z[j])) * scale;
    descend(scaled, p, d, 0, corner, scale, found);
    std::size_t j = n;
    while (j-- > 0) {
      if (++z[j] <= last[j]) break;
      z[j] = first[j];
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }

  std::sort(found.begin(), found.end());
  std::vector<PAdicCube> cubes;
  cubes.reserve(found.size());
  for (const auto& [level, corner] : found) {
    const Integer cell = scale;
    const Integer unit = ipow(Integer(p), d - level);
    std::vector<long long> shift(n);
    std::vector<Integer> index(n);
    for (std::size_t j = 0; j < n; ++j) {
      Integer zj;
      mpz_fdiv_q(zj.get_mpz_t(), corner[j].get_mpz_t(), cell.get_mpz_t());
      shift[j] = to_int64(zj);
      index[j] = (corner[j] - zj * cell) / unit;
    }
    cubes.push_back(cube_from_index(static_cast<unsigned>(n), p, level, shift, index));
  }
  return cubes;
}

Rational box_measure_exact(const Measure& measure, const AxisBox& box) {
  if (box.dim() != measure.dim()) throw Error(ErrorCode::DimensionMismatch, "box and measure differ in dimension");
  Rational total(0);
  for (const auto& cube : box_decompose(box, measure.p())) total += cube_measure(measure, cube);
  return total;
}

Rational box_measure(const Measure& measure, const AxisBox& box) {
  return region_measure(measure, box_region(box));
}

MeasureEnclosure box_measure_enclosure(const Measure& measure, const AxisBox& box, unsigned generation,
                                       unsigned generation_cap) {
  if (box.dim() != measure.dim()) throw Error(ErrorCode::DimensionMismatch, "box and measure differ in dimension");
  auto classify = [&box](const RationalVector& lo, const Rational& side) {
    bool inside = true;
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const Rational end = lo[j] + side;
      if (end <= box.lo()[j] || lo[j] >= box.hi()[j]) return CellClass::Outside;
      if (lo[j] < box.lo()[j] || end > box.hi()[j]) inside = false;
    }
    return inside ? CellClass::Inside : CellClass::Straddle;
  };
  return classify_enclosure(measure, box.lo(), box.hi(), classify, generation, generation_cap);
}

AxisBox strip_box(const PAdicCube& parent, unsigned axis, const Rational& offset, const Rational& thickness) {
  if (axis >= parent.path.dim) throw Error(ErrorCode::IndexOutOfRange, "strip axis out of range");
  const RationalVector lo = parent.lower();
  const Rational side = parent.side();
  if (sgn(thickness) <= 0 || offset < lo[axis] || offset + thickness > lo[axis] + side) {
    throw Error(ErrorCode::StripNotContained, "strip [" + to_string(offset) + ", " + to_string(offset + thickness) +
                                                  ") leaves the parent cube");
  }
  RationalVector slo = lo, shi(lo.size());
  for (std::size_t j = 0; j < lo.size(); ++j) shi[j] = lo[j] + side;
  slo[axis] = offset;
  shi[axis] = offset + thickness;
  return AxisBox(std::move(slo), std::move(shi));
}

Rational strip_measure(const Measure& measure, const PAdicCube& parent, unsigned axis, const Rational& offset,
                       const Rational& thickness) {
  if (!is_adc_class(measure)) {
    throw Error(ErrorCode::ADCClassRequired, "strip identity needs a length-class p = 3 measure in the balanced family");
  }
  const AxisBox strip = strip_box(parent, axis, offset, thickness);
  const Rational value =
      Rational(ipow(Integer(3), static_cast<unsigned>(parent.generation()))) * thickness * cube_measure(measure, parent);
  const Rational check = box_measure(measure, strip);
  if (check != value) {
    throw Error(ErrorCode::InternalInconsistency,
                "strip identity failed: " + to_string(value) + " vs region engine " + to_string(check));
  }
  return value;
}

}  // namespace bernoulli
