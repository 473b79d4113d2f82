#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bernoulli/measure.hpp"

namespace bernoulli {

enum class Law { Lebesgue, Mu };

Law parse_law(std::string_view name);
std::string_view to_string(Law law);

/// h(P) = -sum_nu p_nu log p_nu.
double entropy(const Measure& measure);
/// h(P) / log p; equals N exactly when the measure is uniform.
double dimension(const Measure& measure);

/// E[X_1] under the given law: p^-N sum log p_nu (Lebesgue) or
/// sum p_nu log p_nu = -h(P) (mu).
double expected_log(const Measure& measure, Law law);

/// Digits nu^1..nu^n drawn independently: uniformly under Lebesgue measure,
/// with probabilities p_nu under mu. Stream is a 64-bit Mersenne twister
/// seeded with `seed`; results are platform independent.
PAdicPath sample_path(const Measure& measure, Law law, unsigned depth, std::uint64_t seed);

/// Center of the sampled generation-n cube.
RationalVector sample_point(const Measure& measure, Law law, unsigned depth, std::uint64_t seed);

RationalVector cube_center(const PAdicPath& path);

struct TrajectorySample {
  RationalVector point;
  /// values[n] = log(mu(Q_n(x)) / m_N(Q_n(x))) for n = 0..n_max.
  std::vector<double> values;
  /// Least-squares slope over n in [ceil(n_max / 2), n_max].
  double slope_estimate = 0.0;
};

TrajectorySample density_trajectory(const Measure& measure, const RationalVector& x, unsigned n_max);
TrajectorySample path_trajectory(const Measure& measure, const PAdicPath& path);

struct DistributionStats {
  Law law = Law::Lebesgue;
  std::size_t samples = 0;
  unsigned depth = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string tolerance_rule;
  /// Fraction of sample trajectories whose slope has the sign of
  /// N log p + target (zero slopes count as correct for the uniform measure).
  double slope_sign_fraction = 0.0;
  double mean_slope = 0.0;
  double slope_stddev = 0.0;
};

/// S_n / n over M points sampled under `law`; sample i uses seed + i.
DistributionStats lln_experiment(const Measure& measure, Law law, std::size_t samples, unsigned depth,
                                 std::uint64_t seed, unsigned jobs = 1);

}  // namespace bernoulli
