#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bernoulli/enclosure.hpp"
#include "bernoulli/measure.hpp"

namespace bernoulli {

enum class Metric { L1, L2, LINF };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool hi_unbounded = false;

  bool exact() const { return !hi_unbounded && lo == hi; }
};

/// Ball measure. l-infinity balls are the half-open cubes Q(x, R) and l1
/// balls are polyhedra with {-1, 1} normals; both are evaluated exactly by
/// the region engine for any rational data. l2 balls get a generation-g
/// cell-classification enclosure.
MeasureEnclosure ball_measure(const Measure& measure, Metric metric, const RationalVector& center,
                              const Rational& radius, unsigned generation,
                              unsigned generation_cap = kDefaultGenerationCap);

/// Cell-classification enclosure for any metric: corner distances in exact
/// arithmetic, squared distances for l2.
MeasureEnclosure ball_enclosure(const Measure& measure, Metric metric, const RationalVector& center,
                                const Rational& radius, unsigned generation,
                                unsigned generation_cap = kDefaultGenerationCap);

/// rho = mu(B_R \ B_r) / (((R - r) / R) mu(B_R)).
struct AnnulusReport {
  RationalVector center;
  Rational r;
  Rational R;
  Metric metric = Metric::LINF;
  MeasureEnclosure annulus;
  MeasureEnclosure ball;
  RationalInterval ratio;
  bool exact = false;
};

AnnulusReport annulus_ratio(const Measure& measure, Metric metric, const RationalVector& center, const Rational& r,
                            const Rational& R, unsigned generation,
                            unsigned generation_cap = kDefaultGenerationCap);

/// Centers of a scan: the points -1/2 + i p^-m (corners of the generation-m
/// grid) or the midpoints of the generation-m cubes, inside Q_0.
struct CenterGrid {
  unsigned dim = 2;
  unsigned p = 3;
  unsigned generation = 3;
  bool cell_centers = false;

  std::size_t size() const;
  RationalVector center(std::size_t index) const;
  std::string describe() const;
};

struct RadiusPair {
  Rational r;
  Rational R;
  unsigned k = 0;
  unsigned j = 0;
};

/// R = 3^-k / 2 for k = 0..k_max and r = R (1 - 3^-j) for j = 1..j_max.
std::vector<RadiusPair> annulus_family(unsigned k_max, unsigned j_max);

struct ScanReport {
  std::string grid_description;
  std::vector<RadiusPair> radii;
  /// Center-major order: reports[c * radii.size() + i].
  std::vector<AnnulusReport> reports;
  Rational max_ratio_upper;
  bool max_unbounded = false;
  std::size_t argmax = 0;
};

ScanReport adc_scan(const Measure& measure, Metric metric, const CenterGrid& centers,
                    const std::vector<RadiusPair>& radii, unsigned generation, unsigned jobs = 1,
                    unsigned generation_cap = kDefaultGenerationCap);

/// mu(Q(x, 2r)) / mu(Q(x, r)); exact for every rational (x, r).
RationalInterval doubling_ratio(const Measure& measure, const RationalVector& center, const Rational& r,
                                unsigned generation = 0);

/// 2^N a_min^(-N-3).
Rational doubling_bound(const Measure& measure);

struct DoublingSample {
  RationalVector center;
  Rational r;
  RationalInterval ratio;
};

struct DoublingAudit {
  std::vector<DoublingSample> samples;
  Rational bound;
  Rational max_upper;
  std::size_t argmax = 0;
  bool within_bound = true;
};

DoublingAudit doubling_audit(const Measure& measure, const CenterGrid& centers, const std::vector<Rational>& radii,
                             unsigned jobs = 1);

struct ContiguityResult {
  unsigned generation = 0;
  std::size_t pairs = 0;
  Rational min_ratio;
  PAdicCube argmin_numerator;
  PAdicCube argmin_denominator;
  Rational a_min;
  bool holds = false;
};

/// Exhaustive minimum of mu(Q) / mu(Q') over ordered face-adjacent pairs of
/// generation-n cubes, periodic wrap included.
ContiguityResult contiguous_pair_audit(const Measure& measure, unsigned generation,
                                       std::size_t max_cells = std::size_t{1} << 20);

struct ChainResult {
  unsigned n = 0;
  Rational measure;
  Rational claimed;
  bool matches = false;
};

/// Measure of the diagonal chain of 3^n generation-n squares starting at
/// [-3^-n/2, 3^-n/2) x [-1/2, -1/2 + 3^-n) and stepping by 3^-n (1, 1),
/// compared against (2 a_1 + a_2)^n.
ChainResult chain_measure(const Measure& measure, unsigned n);

/// l1 annuli at center (0, 1/2), R = 1, r_n = 1 - 3^-n for n = 1..n_max,
/// evaluated at generation n + generation_offset.
std::vector<AnnulusReport> d1_blowup_series(const Measure& measure, unsigned n_max, unsigned generation_offset = 2,
                                            unsigned generation_cap = kDefaultGenerationCap);

/// rho_{n+1}.lo / rho_n.hi for consecutive reports; nullopt when rho_n.hi is
/// unbounded.
std::vector<std::optional<Rational>> growth_quotients(const std::vector<AnnulusReport>& series);

struct StripCoverReport {
  Rational annulus;
  Rational ball;
  std::vector<Rational> strips;
  Rational strip_sum;
  /// max over strips of mu(strip) / ((h / R) mu(Q(x, R))).
  Rational empirical_constant;
  bool covered = false;
};

/// Splits Q(x, R) \ Q(x, r) into its 2N coordinate strips of thickness R - r.
StripCoverReport strip_cover_audit(const Measure& measure, const RationalVector& center, const Rational& r,
                                   const Rational& R);

}  // namespace bernoulli
