#include "bernoulli/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace bernoulli {

Law parse_law(std::string_view name) {
  if (name == "lebesgue") return Law::Lebesgue;
  if (name == "mu") return Law::Mu;
  throw Error(ErrorCode::ParseError, "unknown law '" + std::string(name) + "' (expected lebesgue or mu)");
}

std::string_view to_string(Law law) { return law == Law::Lebesgue ? "lebesgue" : "mu"; }

double entropy(const Measure& measure) {
  double h = 0.0;
  for (const auto& p : measure.probabilities()) h -= p.get_d() * log_rational(p);
  return h;
}

double dimension(const Measure& measure) {
  if (measure.is_uniform()) return static_cast<double>(measure.dim());
  return entropy(measure) / std::log(static_cast<double>(measure.p()));
}

double expected_log(const Measure& measure, Law law) {
  if (law == Law::Mu) return -entropy(measure);
  double sum = 0.0;
  for (const auto& p : measure.probabilities()) sum += log_rational(p);
  return sum / static_cast<double>(measure.child_count());
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return static_cast<std::size_t>(v % n);
}

}  // namespace

PAdicPath sample_path(const Measure& measure, Law law, unsigned depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& p : measure.probabilities()) {
    acc += p.get_d();
    cumulative.push_back(acc);
  }
  PAdicPath path;
  path.dim = measure.dim();
  path.p = measure.p();
  for (unsigned k = 0; k < depth; ++k) {
    std::size_t idx = 0;
    if (law == Law::Lebesgue) {
      idx = uniform_index(rng, measure.child_count());
    } else {
      const double u = unit_uniform(rng) * acc;
      idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      idx = std::min(idx, measure.child_count() - 1);
    }
    path.steps.push_back(measure.index_vector(idx));
  }
  return path;
}

RationalVector cube_center(const PAdicPath& path) {
  PAdicCube cube{path, std::vector<long long>(path.dim, 0)};
  RationalVector x = cube.lower();
  const Rational half_side = cube.side() / 2;
  for (auto& v : x) v += half_side;
  return x;
}

RationalVector sample_point(const Measure& measure, Law law, unsigned depth, std::uint64_t seed) {
  return cube_center(sample_path(measure, law, depth, seed));
}

namespace {

double tail_slope(const std::vector<double>& values) {
  const std::size_t n_max = values.size() - 1;
  const std::size_t first = (n_max + 1) / 2;
  const std::size_t count = n_max - first + 1;
  if (count < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t n = first; n <= n_max; ++n) {
    mx += static_cast<double>(n);
    my += values[n];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t n = first; n <= n_max; ++n) {
    const double dx = static_cast<double>(n) - mx;
    sxy += dx * (values[n] - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace

TrajectorySample path_trajectory(const Measure& measure, const PAdicPath& path) {
  TrajectorySample sample;
  sample.point = cube_center(path);
  const Rational cells(ipow(Integer(measure.p()), measure.dim()));
  Rational density(1);
  sample.values.push_back(0.0);
  for (const auto& step : path.steps) {
    density *= measure.probability(measure.digit_index(step)) * cells;
    sample.values.push_back(log_rational(density));
  }
  sample.slope_estimate = tail_slope(sample.values);
  return sample;
}

TrajectorySample density_trajectory(const Measure& measure, const RationalVector& x, unsigned n_max) {
  if (x.size() != measure.dim()) throw Error(ErrorCode::DimensionMismatch, "point and measure differ in dimension");
  TrajectorySample sample = path_trajectory(measure, point_path(measure.p(), x, n_max));
  sample.point = x;
  return sample;
}

namespace {

// Neumaier summation so the mean does not depend on accumulation order.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

DistributionStats lln_experiment(const Measure& measure, Law law, std::size_t samples, unsigned depth,
                                 std::uint64_t seed, unsigned jobs) {
  if (samples == 0 || depth == 0) throw Error(ErrorCode::IndexOutOfRange, "need at least one sample and depth >= 1");
  std::vector<double> averages(samples), slopes(samples);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PAdicPath path = sample_path(measure, law, depth, seed + i);
      const Rational mass = path_measure(measure, path);
      averages[i] = log_rational(mass) / static_cast<double>(depth);
      slopes[i] = path_trajectory(measure, path).slope_estimate;
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(samples)));
  if (jobs == 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (samples + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::size_t begin = std::min(samples, w * chunk);
      workers.emplace_back(work, begin, std::min(samples, begin + chunk));
    }
    for (auto& t : workers) t.join();
  }

  DistributionStats stats;
  stats.law = law;
  stats.samples = samples;
  stats.depth = depth;
  stats.seed = seed;
  stats.target = expected_log(measure, law);
  CompensatedSum sum, slope_sum;
  for (std::size_t i = 0; i < samples; ++i) {
    sum.add(averages[i]);
    slope_sum.add(slopes[i]);
  }
  stats.mean = sum.value() / static_cast<double>(samples);
  stats.mean_slope = slope_sum.value() / static_cast<double>(samples);
  CompensatedSum sq, slope_sq;
  for (std::size_t i = 0; i < samples; ++i) {
    sq.add((averages[i] - stats.mean) * (averages[i] - stats.mean));
    slope_sq.add((slopes[i] - stats.mean_slope) * (slopes[i] - stats.mean_slope));
  }
  const double dof = samples > 1 ? static_cast<double>(samples - 1) : 1.0;
  stats.variance = sq.value() / dof;
  stats.slope_stddev = std::sqrt(slope_sq.value() / dof);

  const double floor_tol = 1e-12 * std::max(1.0, std::fabs(stats.target));
  stats.tolerance = std::max(3.0 * std::sqrt(stats.variance) / std::sqrt(static_cast<double>(samples)), floor_tol);
  stats.tolerance_rule = "|mean - target| <= max(3 * stddev / sqrt(M), 1e-12 * max(1, |target|))";
  stats.pass = std::fabs(stats.mean - stats.target) <= stats.tolerance;

  const double drift = static_cast<double>(measure.dim()) * std::log(static_cast<double>(measure.p())) + stats.target;
  std::size_t correct = 0;
  for (double s : slopes) {
    if (measure.is_uniform()) {
      correct += s == 0.0;
    } else if ((drift < 0 && s < 0) || (drift > 0 && s > 0)) {
      ++correct;
    }
  }
  stats.slope_sign_fraction = static_cast<double>(correct) / static_cast<double>(samples);
  return stats;
}

}  // namespace bernoulli
