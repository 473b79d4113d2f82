#pragma once

// Brute-force reference computations for p = 3 length-class measures. They
// enumerate generation-g cells directly and share nothing with the library
// beyond the GMP number types.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;

inline long pow3(unsigned e) {
  long v = 1;
  while (e-- > 0) v *= 3;
  return v;
}

inline long wrap(long i, long m) { return ((i % m) + m) % m; }

// Mass of the generation-g cell with integer coordinates idx (lower corner
// -1/2 + idx / 3^g, reduced periodically), written as a count of how many
// levels used each length k.
inline std::vector<int> cell_signature(unsigned dim, unsigned g, const std::vector<long>& idx) {
  std::vector<int> counts(dim + 1, 0);
  const long side = pow3(g);
  std::vector<long> z(dim);
  for (unsigned j = 0; j < dim; ++j) z[j] = wrap(idx[j], side);
  for (unsigned level = 0; level < g; ++level) {
    int k = 0;
    for (unsigned j = 0; j < dim; ++j) {
      if (z[j] % 3 != 1) ++k;
      z[j] /= 3;
    }
    ++counts[k];
  }
  return counts;
}

inline Q signature_mass(const std::vector<Q>& a, const std::vector<int>& counts) {
  Q m(1);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    for (int e = 0; e < counts[k]; ++e) m *= a[k];
  }
  return m;
}

inline Q cell_mass(const std::vector<Q>& a, unsigned dim, unsigned g, const std::vector<long>& idx) {
  return signature_mass(a, cell_signature(dim, g, idx));
}

// Accumulates masses grouped by signature so large enumerations stay cheap.
class MassSum {
 public:
  MassSum(const std::vector<Q>& a, unsigned dim, unsigned g) : a_(a), dim_(dim), g_(g) {}
  void add(const std::vector<long>& idx) { ++groups_[cell_signature(dim_, g_, idx)]; }
  Q value() const {
    Q total(0);
    for (const auto& [sig, count] : groups_) total += Q(count) * signature_mass(a_, sig);
    return total;
  }

 private:
  std::vector<Q> a_;
  unsigned dim_;
  unsigned g_;
  std::map<std::vector<int>, long> groups_;
};

// Visits every integer vector in [lo_j, hi_j) (half-open, per axis).
inline void for_each_index(const std::vector<long>& lo, const std::vector<long>& hi,
                           const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> z(lo);
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] >= hi[j]) return;
  }
  while (true) {
    fn(z);
    std::size_t j = lo.size();
    while (j > 0) {
      --j;
      if (++z[j] < hi[j]) break;
      z[j] = lo[j];
      if (j == 0) return;
    }
    if (lo.empty()) return;
  }
}

// Measure of the grid box whose generation-g cell range is [lo_j, hi_j).
inline Q grid_box_mass(const std::vector<Q>& a, unsigned dim, unsigned g, const std::vector<long>& lo,
                       const std::vector<long>& hi) {
  MassSum sum(a, dim, g);
  for_each_index(lo, hi, [&](const std::vector<long>& z) { sum.add(z); });
  return sum.value();
}

inline long floor_q(const Q& v) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return f.get_si();
}

struct Interval {
  Q lo;
  Q hi;
};

// Inner/outer cover of a half-open box by generation-g cells.
inline Interval box_cover(const std::vector<Q>& a, unsigned dim, unsigned g, const std::vector<Q>& lo,
                          const std::vector<Q>& hi) {
  const Q side(1, pow3(g));
  std::vector<long> first(dim), last(dim);
  for (unsigned j = 0; j < dim; ++j) {
    first[j] = floor_q((lo[j] + Q(1, 2)) / side);
    last[j] = floor_q((hi[j] + Q(1, 2)) / side) + 1;
  }
  MassSum inner(a, dim, g), outer(a, dim, g);
  for_each_index(first, last, [&](const std::vector<long>& z) {
    bool inside = true, meets = true;
    for (unsigned j = 0; j < dim; ++j) {
      const Q c_lo = Q(z[j]) * side - Q(1, 2);
      const Q c_hi = c_lo + side;
      if (!(c_lo >= lo[j] && c_hi <= hi[j])) inside = false;
      if (!(c_lo < hi[j] && c_hi > lo[j])) meets = false;
    }
    if (inside) inner.add(z);
    if (meets) outer.add(z);
  });
  return {inner.value(), outer.value()};
}

// Cells of generation g whose closure meets / lies in the closed set given by
// a predicate on the cell (lower corner, side).
enum class Where { Out, In, Both };

inline Interval set_cover(const std::vector<Q>& a, unsigned dim, unsigned g, const std::vector<long>& first,
                          const std::vector<long>& last,
                          const std::function<Where(const std::vector<Q>&, const Q&)>& where) {
  const Q side(1, pow3(g));
  MassSum inner(a, dim, g), outer(a, dim, g);
  std::vector<Q> corner(dim);
  for_each_index(first, last, [&](const std::vector<long>& z) {
    for (unsigned j = 0; j < dim; ++j) corner[j] = Q(z[j]) * side - Q(1, 2);
    const Where w = where(corner, side);
    if (w == Where::In) inner.add(z);
    if (w != Where::Out) outer.add(z);
  });
  return {inner.value(), outer.value()};
}

// Seeded helpers for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// The parameter-1/72 member of the planar family: (1/18, 5/36, 7/72).
inline std::vector<Q> eps72() { return {Q(1, 18), Q(5, 36), Q(7, 72)}; }

}  // namespace oracle
