#include "bernoulli/coeff_solver.hpp"

#include <algorithm>
#include <numeric>

namespace bernoulli {

namespace {

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

ConstraintSystem build_adc_system(unsigned dim) {
  if (dim == 0) throw Error(ErrorCode::MalformedSpec, "dimension must be positive");
  ConstraintSystem system;
  system.dim = dim;
  ConstraintRow first{RationalVector(dim + 1, Rational(0)), Rational(1, 3)};
  ConstraintRow second{RationalVector(dim + 1, Rational(0)), Rational(1, 3)};
  for (unsigned k = 0; k < dim; ++k) {
    const Rational c(ipow(Integer(2), k) * binomial(dim - 1, k));
    first.coefficients[k] = c;
    second.coefficients[k + 1] = c;
  }
  system.rows = {first, second};
  return system;
}

ConstraintRow normalization_row(unsigned dim) {
  ConstraintRow row{RationalVector(dim + 1), Rational(1)};
  for (unsigned k = 0; k <= dim; ++k) row.coefficients[k] = Rational(length_class_size(dim, k));
  return row;
}

std::vector<std::size_t> rref(std::vector<RationalVector>& rows, const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col : column_order) {
    if (next == rows.size()) break;
    std::size_t pivot = next;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[next]);
    const Rational inv = Rational(1) / rows[next][col];
    for (auto& x : rows[next]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] -= f * rows[next][k];
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

RationalVector primitive_integer_vector(const RationalVector& v, std::size_t anchor) {
  Integer den_lcm(1), num_gcd(0);
  for (const auto& x : v) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * den_lcm;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), out[i].get_num_mpz_t());
  }
  if (num_gcd == 0) return out;
  int sign = 1;
  for (std::size_t i = anchor; i < out.size(); ++i) {
    if (sgn(out[i]) != 0) {
      sign = sgn(out[i]);
      break;
    }
  }
  for (auto& x : out) x = x / Rational(num_gcd) * sign;
  return out;
}

SolutionParametrization solve_affine(const ConstraintSystem& system) {
  const unsigned n = system.dim;
  const std::size_t cols = n + 1;
  std::vector<RationalVector> rows;
  for (const auto& row : system.rows) rows.push_back(row.coefficients);

  // a_0 and a_N are always pivotable (row one never touches a_N, row two
  // never touches a_0); the middle coefficients become the parameters.
  std::vector<std::size_t> order{0};
  if (n >= 1) order.push_back(n);
  for (std::size_t k = 1; k < n; ++k) order.push_back(k);
  const auto pivots = rref(rows, order);

  SolutionParametrization param;
  param.dim = n;
  param.particular.assign(cols, Rational(1) / Rational(ipow(Integer(3), n)));
  for (const auto& row : system.rows) {
    Rational lhs(0);
    for (std::size_t k = 0; k < cols; ++k) lhs += row.coefficients[k] * param.particular[k];
    if (lhs != row.rhs) throw Error(ErrorCode::InternalInconsistency, "uniform point violates the system");
  }

  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    param.basis.push_back(primitive_integer_vector(v, free));
  }
  return param;
}

LengthClassCoefficients sample_coefficients(const SolutionParametrization& param, const RationalVector& t) {
  if (t.size() != param.basis.size()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(param.basis.size()) + " parameters, got " +
                                                  std::to_string(t.size()));
  }
  LengthClassCoefficients out{param.dim, param.particular};
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += t[i] * param.basis[i][k];
  }
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    if (sgn(out.values[k]) <= 0) {
      throw Error(ErrorCode::OutOfOpenBox, "a_" + std::to_string(k) + " = " + to_string(out.values[k]) + " violates a_" +
                                               std::to_string(k) + " > 0");
    }
    if (out.values[k] >= 1) {
      throw Error(ErrorCode::OutOfOpenBox, "a_" + std::to_string(k) + " = " + to_string(out.values[k]) + " violates a_" +
                                               std::to_string(k) + " < 1");
    }
  }
  return out;
}

bool is_adc_class(const Measure& measure) {
  const auto* coeffs = measure.coefficients();
  if (coeffs == nullptr || measure.p() != 3) return false;
  for (const auto& row : build_adc_system(measure.dim()).rows) {
    Rational lhs(0);
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) lhs += row.coefficients[k] * coeffs->values[k];
    if (lhs != row.rhs) return false;
  }
  return true;
}

}  // namespace bernoulli
