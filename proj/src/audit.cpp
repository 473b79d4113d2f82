#include "bernoulli/audit.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "bernoulli/coeff_solver.hpp"
#include "bernoulli/decompose.hpp"
#include "bernoulli/region.hpp"

namespace bernoulli {

Metric parse_metric(std::string_view name) {
  if (name == "l1") return Metric::L1;
  if (name == "l2") return Metric::L2;
  if (name == "linf") return Metric::LINF;
  throw Error(ErrorCode::ParseError, "unknown metric '" + std::string(name) + "' (expected l1, l2 or linf)");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::L1: return "l1";
    case Metric::L2: return "l2";
    case Metric::LINF: return "linf";
  }
  return "?";
}

namespace {

// Range of the distance (squared for l2) from `center` to the closed cube.
std::pair<Rational, Rational> distance_range(Metric metric, const RationalVector& center, const RationalVector& lo,
                                             const Rational& side) {
  Rational near(0), far(0);
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const Rational below = center[j] - lo[j];
    const Rational above = lo[j] + side - center[j];
    Rational n = 0;
    if (sgn(below) < 0) n = -below;
    if (sgn(above) < 0) n = -above;
    const Rational f = below > above ? below : above;
    switch (metric) {
      case Metric::L1:
        near += n;
        far += f;
        break;
      case Metric::L2:
        near += n * n;
        far += f * f;
        break;
      case Metric::LINF:
        if (n > near) near = n;
        if (f > far) far = f;
        break;
    }
  }
  return {near, far};
}

Rational metric_radius(Metric metric, const Rational& radius) {
  return metric == Metric::L2 ? radius * radius : radius;
}

void check_center(const Measure& measure, const RationalVector& center) {
  if (center.size() != measure.dim()) throw Error(ErrorCode::DimensionMismatch, "center and measure differ in dimension");
}

bool exact_metric(Metric metric) { return metric != Metric::L2; }

Rational exact_ball(const Measure& measure, Metric metric, const RationalVector& center, const Rational& radius) {
  if (metric == Metric::LINF) return box_measure(measure, AxisBox::cube(center, radius));
  return region_measure(measure, l1_ball_region(center, radius));
}

RationalInterval ratio_interval(const MeasureEnclosure& annulus, const MeasureEnclosure& ball, const Rational& r,
                                const Rational& R) {
  RationalInterval out;
  if (r == R) return {Rational(0), Rational(0), false};
  const Rational width = (R - r) / R;
  out.lo = annulus.lo / (width * ball.hi);
  if (sgn(ball.lo) == 0) {
    out.hi_unbounded = sgn(annulus.hi) != 0;
    out.hi = 0;
  } else {
    out.hi = annulus.hi / (width * ball.lo);
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

MeasureEnclosure ball_enclosure(const Measure& measure, Metric metric, const RationalVector& center,
                                const Rational& radius, unsigned generation, unsigned generation_cap) {
  check_center(measure, center);
  if (sgn(radius) <= 0) throw Error(ErrorCode::DegenerateRadii, "ball radius must be positive");
  const Rational bound = metric_radius(metric, radius);
  auto classify = [&](const RationalVector& lo, const Rational& side) {
    const auto [near, far] = distance_range(metric, center, lo, side);
    if (far <= bound) return CellClass::Inside;
    if (near > bound) return CellClass::Outside;
    return CellClass::Straddle;
  };
  RationalVector blo(center.size()), bhi(center.size());
  for (std::size_t j = 0; j < center.size(); ++j) {
    blo[j] = center[j] - radius;
    bhi[j] = center[j] + radius;
  }
  return classify_enclosure(measure, blo, bhi, classify, generation, generation_cap);
}

MeasureEnclosure ball_measure(const Measure& measure, Metric metric, const RationalVector& center,
                              const Rational& radius, unsigned generation, unsigned generation_cap) {
  check_center(measure, center);
  if (sgn(radius) <= 0) throw Error(ErrorCode::DegenerateRadii, "ball radius must be positive");
  if (exact_metric(metric)) return MeasureEnclosure::point(exact_ball(measure, metric, center, radius), generation);
  return ball_enclosure(measure, metric, center, radius, generation, generation_cap);
}

AnnulusReport annulus_ratio(const Measure& measure, Metric metric, const RationalVector& center, const Rational& r,
                            const Rational& R, unsigned generation, unsigned generation_cap) {
  check_center(measure, center);
  if (sgn(r) <= 0 || r > R) {
    throw Error(ErrorCode::DegenerateRadii, "annulus needs 0 < r <= R, got r = " + to_string(r) + ", R = " + to_string(R));
  }
  AnnulusReport report;
  report.center = center;
  report.r = r;
  report.R = R;
  report.metric = metric;
  report.ball = ball_measure(measure, metric, center, R, generation, generation_cap);
  if (r == R) {
    report.annulus = MeasureEnclosure::point(Rational(0), generation);
  } else if (exact_metric(metric)) {
    report.annulus = MeasureEnclosure::point(report.ball.lo - exact_ball(measure, metric, center, r), generation);
  } else {
    const Rational inner = metric_radius(metric, r);
    const Rational outer = metric_radius(metric, R);
    auto classify = [&](const RationalVector& lo, const Rational& side) {
      const auto [near, far] = distance_range(metric, center, lo, side);
      if (far <= inner || near > outer) return CellClass::Outside;
      if (near > inner && far <= outer) return CellClass::Inside;
      return CellClass::Straddle;
    };
    RationalVector blo(center.size()), bhi(center.size());
    for (std::size_t j = 0; j < center.size(); ++j) {
      blo[j] = center[j] - R;
      bhi[j] = center[j] + R;
    }
    report.annulus = classify_enclosure(measure, blo, bhi, classify, generation, generation_cap);
  }
  report.ratio = ratio_interval(report.annulus, report.ball, r, R);
  report.exact = report.annulus.exact() && report.ball.exact();
  return report;
}

std::size_t CenterGrid::size() const {
  std::size_t per_axis = ipow(Integer(p), generation).get_ui();
  std::size_t total = 1;
  for (unsigned j = 0; j < dim; ++j) total *= per_axis;
  return total;
}

RationalVector CenterGrid::center(std::size_t index) const {
  const std::size_t per_axis = ipow(Integer(p), generation).get_ui();
  const Rational step = Rational(1) / Rational(ipow(Integer(p), generation));
  RationalVector x(dim);
  for (unsigned j = dim; j-- > 0;) {
    const std::size_t i = index % per_axis;
    index /= per_axis;
    x[j] = Rational(-1, 2) + step * static_cast<unsigned long>(i);
    if (cell_centers) x[j] += step / 2;
  }
  return x;
}

std::string CenterGrid::describe() const {
  return std::string(cell_centers ? "cell centers" : "grid corners") + " of generation " + std::to_string(generation) +
         " (p = " + std::to_string(p) + ", N = " + std::to_string(dim) + ", " + std::to_string(size()) +
         " points in Q_0)";
}

std::vector<RadiusPair> annulus_family(unsigned k_max, unsigned j_max) {
  std::vector<RadiusPair> out;
  for (unsigned k = 0; k <= k_max; ++k) {
    const Rational R = Rational(1) / Rational(2 * ipow(Integer(3), k));
    for (unsigned j = 1; j <= j_max; ++j) {
      const Rational r = R * (Rational(1) - Rational(1) / Rational(ipow(Integer(3), j)));
      out.push_back({r, R, k, j});
    }
  }
  return out;
}

ScanReport adc_scan(const Measure& measure, Metric metric, const CenterGrid& centers,
                    const std::vector<RadiusPair>& radii, unsigned generation, unsigned jobs,
                    unsigned generation_cap) {
  ScanReport scan;
  scan.grid_description = centers.describe();
  scan.radii = radii;
  const std::size_t total = centers.size() * radii.size();
  scan.reports.resize(total);
  parallel_for(total, jobs, [&](std::size_t i) {
    const RadiusPair& pair = radii[i % radii.size()];
    scan.reports[i] =
        annulus_ratio(measure, metric, centers.center(i / radii.size()), pair.r, pair.R, generation, generation_cap);
  });
  for (std::size_t i = 0; i < total; ++i) {
    const auto& ratio = scan.reports[i].ratio;
    if (scan.max_unbounded) break;
    if (ratio.hi_unbounded) {
      scan.max_unbounded = true;
      scan.argmax = i;
    } else if (i == 0 || ratio.hi > scan.max_ratio_upper) {
      scan.max_ratio_upper = ratio.hi;
      scan.argmax = i;
    }
  }
  return scan;
}

RationalInterval doubling_ratio(const Measure& measure, const RationalVector& center, const Rational& r,
                                unsigned /*generation*/) {
  check_center(measure, center);
  if (sgn(r) <= 0) throw Error(ErrorCode::DegenerateRadii, "doubling radius must be positive");
  const Rational big = box_measure(measure, AxisBox::cube(center, 2 * r));
  const Rational small = box_measure(measure, AxisBox::cube(center, r));
  const Rational q = big / small;
  return {q, q, false};
}

Rational doubling_bound(const Measure& measure) {
  return Rational(ipow(Integer(2), measure.dim())) / rpow(measure.a_min(), measure.dim() + 3);
}

DoublingAudit doubling_audit(const Measure& measure, const CenterGrid& centers, const std::vector<Rational>& radii,
                             unsigned jobs) {
  DoublingAudit audit;
  audit.bound = doubling_bound(measure);
  const std::size_t total = centers.size() * radii.size();
  audit.samples.resize(total);
  parallel_for(total, jobs, [&](std::size_t i) {
    const RationalVector x = centers.center(i / radii.size());
    const Rational& r = radii[i % radii.size()];
    audit.samples[i] = {x, r, doubling_ratio(measure, x, r)};
  });
  for (std::size_t i = 0; i < total; ++i) {
    const Rational& hi = audit.samples[i].ratio.hi;
    if (i == 0 || hi > audit.max_upper) {
      audit.max_upper = hi;
      audit.argmax = i;
    }
    if (hi > audit.bound) audit.within_bound = false;
  }
  return audit;
}

ContiguityResult contiguous_pair_audit(const Measure& measure, unsigned generation, std::size_t max_cells) {
  const unsigned n = measure.dim();
  const unsigned p = measure.p();
  const Integer side_count = ipow(Integer(p), generation);
  const Integer cell_count = ipow(side_count, n);
  if (cell_count > Integer(static_cast<unsigned long>(max_cells))) {
    throw Error(ErrorCode::GenerationTooLarge, "contiguity audit at generation " + std::to_string(generation) +
                                                   " needs " + cell_count.get_str() + " cells");
  }
  const std::size_t side = side_count.get_ui();
  const std::size_t cells = cell_count.get_ui();

  // Cell c has per-axis coordinates k_j (first axis most significant); its
  // level-l digit on axis j is the l-th base-p digit of k_j.
  std::vector<Rational> mass(cells, Rational(1));
  std::vector<std::size_t> coord(n);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (unsigned j = n; j-- > 0;) {
      coord[j] = rest % side;
      rest /= side;
    }
    std::size_t scale = side;
    for (unsigned level = 0; level < generation; ++level) {
      scale /= p;
      std::size_t child = 0;
      for (unsigned j = 0; j < n; ++j) child = child * p + (coord[j] / scale) % p;
      mass[c] *= measure.probability(child);
    }
  }

  ContiguityResult result;
  result.generation = generation;
  result.a_min = measure.a_min();
  std::size_t best_num = 0, best_den = 0;
  bool first = true;
  auto consider = [&](std::size_t a, std::size_t b) {
    const Rational ratio = mass[a] / mass[b];
    if (first || ratio < result.min_ratio) {
      result.min_ratio = ratio;
      best_num = a;
      best_den = b;
      first = false;
    }
    ++result.pairs;
  };
  if (side > 1) {
    std::size_t stride = 1;
    for (unsigned j = n; j-- > 0;) {
      for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t k = (c / stride) % side;
        const std::size_t neighbour = k + 1 < side ? c + stride : c - k * stride;
        if (side == 2 && k == 1) continue;
        consider(c, neighbour);
        consider(neighbour, c);
      }
      stride *= side;
    }
  } else {
    result.min_ratio = 1;
  }

  auto cube_of = [&](std::size_t c) {
    std::vector<Integer> index(n);
    for (unsigned j = n; j-- > 0;) {
      index[j] = Integer(static_cast<unsigned long>(c % side));
      c /= side;
    }
    return cube_from_index(n, p, generation, {}, index);
  };
  result.argmin_numerator = cube_of(best_num);
  result.argmin_denominator = cube_of(best_den);
  result.holds = result.min_ratio >= result.a_min;
  return result;
}

ChainResult chain_measure(const Measure& measure, unsigned n) {
  if (measure.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "the diagonal chain lives in dimension 2");
  if (!is_adc_class(measure)) throw Error(ErrorCode::ADCClassRequired, "chain identity needs a measure on the balanced line");
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "chain depth must be positive");
  const std::size_t side = ipow(Integer(3), n).get_ui();
  const std::size_t start = (side - 1) / 2;

  // Group cubes by how often each child probability value occurs on their path.
  const auto& probs = measure.probabilities();
  std::vector<Rational> values;
  std::vector<std::size_t> value_of(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    auto it = std::find(values.begin(), values.end(), probs[i]);
    value_of[i] = static_cast<std::size_t>(it - values.begin());
    if (it == values.end()) values.push_back(probs[i]);
  }
  std::map<std::vector<unsigned>, unsigned long> classes;
  std::vector<unsigned> counts(values.size());
  for (std::size_t j = 0; j < side; ++j) {
    std::size_t kx = (start + j) % side;
    std::size_t ky = j;
    std::fill(counts.begin(), counts.end(), 0U);
    for (unsigned level = 0; level < n; ++level) {
      ++counts[value_of[(kx % 3) * 3 + (ky % 3)]];
      kx /= 3;
      ky /= 3;
    }
    ++classes[counts];
  }
  ChainResult result;
  result.n = n;
  result.measure = 0;
  for (const auto& [cls, multiplicity] : classes) {
    Rational term(multiplicity);
    for (std::size_t v = 0; v < values.size(); ++v) term *= rpow(values[v], cls[v]);
    result.measure += term;
  }
  const auto& a = measure.coefficients()->values;
  result.claimed = rpow(2 * a[1] + a[2], n);
  result.matches = result.measure == result.claimed;
  return result;
}

std::vector<AnnulusReport> d1_blowup_series(const Measure& measure, unsigned n_max, unsigned generation_offset,
                                            unsigned generation_cap) {
  if (measure.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "the l1 counterexample lives in dimension 2");
  const RationalVector center{Rational(0), Rational(1, 2)};
  std::vector<AnnulusReport> series;
  for (unsigned n = 1; n <= n_max; ++n) {
    const Rational r = Rational(1) - Rational(1) / Rational(ipow(Integer(3), n));
    series.push_back(annulus_ratio(measure, Metric::L1, center, r, Rational(1), n + generation_offset, generation_cap));
  }
  return series;
}

std::vector<std::optional<Rational>> growth_quotients(const std::vector<AnnulusReport>& series) {
  std::vector<std::optional<Rational>> out;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto& prev = series[i].ratio;
    if (prev.hi_unbounded || sgn(prev.hi) == 0) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(series[i + 1].ratio.lo / prev.hi);
    }
  }
  return out;
}

StripCoverReport strip_cover_audit(const Measure& measure, const RationalVector& center, const Rational& r,
                                   const Rational& R) {
  check_center(measure, center);
  if (sgn(r) <= 0 || !(r < R)) throw Error(ErrorCode::DegenerateRadii, "strip cover needs 0 < r < R");
  StripCoverReport report;
  report.ball = box_measure(measure, AxisBox::cube(center, R));
  report.annulus = report.ball - box_measure(measure, AxisBox::cube(center, r));
  const Rational h = R - r;
  report.strip_sum = 0;
  report.empirical_constant = 0;
  for (std::size_t m = 0; m < center.size(); ++m) {
    for (const Rational& start : {Rational(center[m] - R), Rational(center[m] + r)}) {
      RationalVector lo(center.size()), hi(center.size());
      for (std::size_t j = 0; j < center.size(); ++j) {
        lo[j] = center[j] - R;
        hi[j] = center[j] + R;
      }
      lo[m] = start;
      hi[m] = start + h;
      const Rational strip = box_measure(measure, AxisBox(lo, hi));
      report.strips.push_back(strip);
      report.strip_sum += strip;
      const Rational c = strip / (h / R * report.ball);
      if (c > report.empirical_constant) report.empirical_constant = c;
    }
  }
  report.covered = report.annulus <= report.strip_sum;
  return report;
}

}  // namespace bernoulli
