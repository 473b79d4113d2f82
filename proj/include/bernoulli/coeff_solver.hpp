#pragma once

#include <vector>

#include "bernoulli/measure.hpp"

namespace bernoulli {

struct ConstraintRow {
  RationalVector coefficients;  // over (a_0, ..., a_N)
  Rational rhs;
};

/// The two Gamma-balance rows
///   sum_{k<N} 2^k C(N-1, k) a_k     = 1/3
///   sum_{k<N} 2^k C(N-1, k) a_{k+1} = 1/3
/// with the open bounds 0 < a_k < 1 kept implicit.
struct ConstraintSystem {
  unsigned dim = 0;
  std::vector<ConstraintRow> rows;
};

/// particular + span(basis). Basis vector i belongs to the free coefficient
/// a_{i+1}: it is the primitive integer kernel vector with a positive entry
/// there and zeros on the other free coefficients.
struct SolutionParametrization {
  unsigned dim = 0;
  RationalVector particular;
  std::vector<RationalVector> basis;
};

ConstraintSystem build_adc_system(unsigned dim);

/// The normalization row sum_k 2^k C(N, k) a_k = 1.
ConstraintRow normalization_row(unsigned dim);

SolutionParametrization solve_affine(const ConstraintSystem& system);

/// particular + sum_i t_i basis_i, rejected with OutOfOpenBox when some
/// coordinate leaves (0, 1).
LengthClassCoefficients sample_coefficients(const SolutionParametrization& param, const RationalVector& t);

/// Both Gamma-balance rows hold exactly (length-class, p = 3).
bool is_adc_class(const Measure& measure);

/// Primitive integer multiple of v whose first nonzero entry at or after
/// `anchor` is positive.
RationalVector primitive_integer_vector(const RationalVector& v, std::size_t anchor = 0);

/// Reduced row echelon form over the rationals, pivoting on columns in the
/// given order. Returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(std::vector<RationalVector>& rows, const std::vector<std::size_t>& column_order);

}  // namespace bernoulli
