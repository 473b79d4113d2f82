#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bernoulli/concurrent_cache.hpp"
#include "bernoulli/error.hpp"
#include "bernoulli/rational.hpp"

namespace bernoulli {

/// Child label nu in {-q..q}^N of a p-adic cube, p = 2q + 1.
struct IndexVector {
  std::vector<int> entries;

  std::size_t dim() const { return entries.size(); }
  /// Sum of |nu_j|; for p = 3 this counts the nonzero coordinates.
  int length() const;

  friend bool operator==(const IndexVector&, const IndexVector&) = default;
  friend auto operator<=>(const IndexVector&, const IndexVector&) = default;
};

/// Throws IndexOutOfRange unless nu has N entries in [-q, q].
void check_index(const IndexVector& nu, unsigned dim, unsigned p);

/// Sequence of child labels (nu^1, ..., nu^n) naming a generation-n cube of
/// Q_0 = [-1/2, 1/2)^N. The empty path is Q_0 itself.
struct PAdicPath {
  unsigned dim = 0;
  unsigned p = 3;
  std::vector<IndexVector> steps;

  std::size_t generation() const { return steps.size(); }
  friend bool operator==(const PAdicPath&, const PAdicPath&) = default;
};

/// A p-adic cube of the periodized grid: the cube named by `path`, translated
/// by the integer vector `lattice_shift`.
struct PAdicCube {
  PAdicPath path;
  std::vector<long long> lattice_shift;

  std::size_t generation() const { return path.generation(); }
  RationalVector lower() const;
  Rational side() const;
  friend bool operator==(const PAdicCube&, const PAdicCube&) = default;
};

/// Builds the cube of generation n whose lower corner is
/// lattice_shift - 1/2 + index / p^n (componentwise), 0 <= index_j < p^n.
PAdicCube cube_from_index(unsigned dim, unsigned p, unsigned n, const std::vector<long long>& lattice_shift,
                          const std::vector<Integer>& index);

/// Half-open box prod_j [lo_j, hi_j).
class AxisBox {
 public:
  AxisBox(RationalVector lo, RationalVector hi);

  std::size_t dim() const { return lo_.size(); }
  const RationalVector& lo() const { return lo_; }
  const RationalVector& hi() const { return hi_; }
  Rational volume() const;

  static AxisBox cube(const RationalVector& center, const Rational& radius);
  static AxisBox of(const PAdicCube& cube);

 private:
  RationalVector lo_;
  RationalVector hi_;
};

/// (a_0, ..., a_N) with p_nu = a_{|nu|} (p = 3).
struct LengthClassCoefficients {
  unsigned dim = 0;
  RationalVector values;
};

struct ProbabilityEntry {
  IndexVector nu;
  Rational probability;
};

/// Explicit table nu -> p_nu covering every child label.
struct ProbabilityTable {
  std::vector<ProbabilityEntry> entries;
};

struct BernoulliSpec {
  unsigned dim = 0;
  unsigned p = 3;
  std::variant<LengthClassCoefficients, ProbabilityTable> mode;

  bool is_length_class() const { return std::holds_alternative<LengthClassCoefficients>(mode); }
};

/// Number of nu in {-1,0,1}^N with |nu| = k, i.e. 2^k C(N, k).
Integer length_class_size(unsigned dim, unsigned k);

/// Validated, immutable Bernoulli product measure. Children are addressed by
/// a digit index in [0, p^N): the base-p number with digits nu_j + q, first
/// coordinate most significant.
class Measure {
 public:
  unsigned dim() const { return dim_; }
  unsigned p() const { return p_; }
  unsigned q() const { return (p_ - 1) / 2; }
  std::size_t child_count() const { return probabilities_.size(); }

  const BernoulliSpec& spec() const { return spec_; }
  bool is_length_class() const { return spec_.is_length_class(); }
  /// Null unless built in length-class mode.
  const LengthClassCoefficients* coefficients() const;

  /// Smallest child probability (equals min_k a_k in length-class mode).
  const Rational& a_min() const { return a_min_; }
  bool is_uniform() const { return uniform_; }

  const Rational& probability(std::size_t digit_index) const { return probabilities_[digit_index]; }
  const RationalVector& probabilities() const { return probabilities_; }
  /// Per-axis digit in [0, p) of a child digit index.
  unsigned digit(std::size_t digit_index, unsigned axis) const;

  std::size_t digit_index(const IndexVector& nu) const;
  IndexVector index_vector(std::size_t digit_index) const;

  /// Memo of region-state values used by the exact region engine.
  ConcurrentCache<std::string, Rational>& region_cache() const { return region_cache_; }
  ConcurrentCache<std::string, Rational>& cube_cache() const { return cube_cache_; }

 private:
  friend std::shared_ptr<const Measure> validate_spec(const BernoulliSpec& spec);
  Measure() = default;

  BernoulliSpec spec_;
  unsigned dim_ = 0;
  unsigned p_ = 3;
  RationalVector probabilities_;
  Rational a_min_;
  bool uniform_ = false;
  mutable ConcurrentCache<std::string, Rational> region_cache_;
  mutable ConcurrentCache<std::string, Rational> cube_cache_;
};

using MeasureHandle = std::shared_ptr<const Measure>;

/// Checks division number, positivity and exact normalization.
MeasureHandle validate_spec(const BernoulliSpec& spec);

BernoulliSpec length_class_spec(const RationalVector& coefficients);
BernoulliSpec uniform_spec(unsigned dim, unsigned p = 3);

Rational cell_probability(const Measure& measure, const IndexVector& nu);

/// prod_k p_{nu^k}; memoized per path, independent of the lattice shift.
Rational cube_measure(const Measure& measure, const PAdicCube& cube);
Rational path_measure(const Measure& measure, const PAdicPath& path);

/// One step of the shift map on [-1/2, 1/2): t -> p t + q - floor(p (t + 1/2)).
Rational shift_map(const Rational& t, unsigned p);

/// Path of the generation-n cube containing x (reduced mod Z^N into Q_0).
PAdicPath point_path(unsigned p, const RationalVector& x, unsigned n);

}  // namespace bernoulli
