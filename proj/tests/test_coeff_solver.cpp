#include "doctest.h"

#include "bernoulli/coeff_solver.hpp"
#include "bernoulli/decompose.hpp"
#include "oracle.hpp"

using namespace bernoulli;

namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Row coefficients by enumeration of {-1,0,1}^N: the strip nu_1 = i picks up
// a_k once for every label with nu_1 = i and k nonzero entries.
RationalVector enumerated_row(unsigned dim, int i) {
  RationalVector row(dim + 1, Rational(0));
  const long total = oracle::pow3(dim);
  for (long code = 0; code < total; ++code) {
    long rest = code;
    int first = 0, k = 0;
    for (unsigned j = 0; j < dim; ++j) {
      const int nu = static_cast<int>(rest % 3) - 1;
      rest /= 3;
      if (j == 0) first = nu;
      if (nu != 0) ++k;
    }
    if (first == i) row[k] += 1;
  }
  return row;
}

ErrorCode code_of_sample(const SolutionParametrization& param, const RationalVector& t) {
  try {
    sample_coefficients(param, t);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("sample accepted");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_SUITE("coeff-solver") {

TEST_CASE("rows match label enumeration") {
  for (unsigned dim = 1; dim <= 5; ++dim) {
    CAPTURE(dim);
    const ConstraintSystem sys = build_adc_system(dim);
    REQUIRE(sys.rows.size() == 2);
    CHECK(sys.rows[0].coefficients == enumerated_row(dim, 0));
    CHECK(sys.rows[1].coefficients == enumerated_row(dim, 1));
    CHECK(enumerated_row(dim, -1) == enumerated_row(dim, 1));
    CHECK(sys.rows[0].rhs == Rational(1, 3));
    CHECK(sys.rows[1].rhs == Rational(1, 3));
  }
  const ConstraintSystem three = build_adc_system(3);
  CHECK(three.rows[0].coefficients == RationalVector{1, 4, 4, 0});
  CHECK(three.rows[1].coefficients == RationalVector{0, 1, 4, 4});
  CHECK(build_adc_system(1).rows[0].coefficients == RationalVector{1, 0});
  CHECK_THROWS_AS(build_adc_system(0), Error);
}

TEST_CASE("row one plus twice row two is the normalization") {
  for (unsigned dim = 1; dim <= 8; ++dim) {
    const ConstraintSystem sys = build_adc_system(dim);
    const ConstraintRow norm = normalization_row(dim);
    for (unsigned k = 0; k <= dim; ++k) {
      CHECK(sys.rows[0].coefficients[k] + 2 * sys.rows[1].coefficients[k] == norm.coefficients[k]);
      CHECK(norm.coefficients[k] == Rational(length_class_size(dim, k)));
    }
    CHECK(sys.rows[0].rhs + 2 * sys.rows[1].rhs == norm.rhs);
  }
}

TEST_CASE("parametrizations") {
  const SolutionParametrization one = solve_affine(build_adc_system(1));
  CHECK(one.basis.empty());
  CHECK(one.particular == RationalVector{Rational(1, 3), Rational(1, 3)});

  const SolutionParametrization two = solve_affine(build_adc_system(2));
  REQUIRE(two.basis.size() == 1);
  CHECK(two.basis[0] == RationalVector{-4, 2, -1});
  CHECK(two.particular == RationalVector(3, Rational(1, 9)));

  for (unsigned dim = 3; dim <= 6; ++dim) {
    const ConstraintSystem sys = build_adc_system(dim);
    const SolutionParametrization param = solve_affine(sys);
    REQUIRE(param.basis.size() == dim - 1);
    for (const auto& row : sys.rows) {
      CHECK(dot(row.coefficients, param.particular) == row.rhs);
      for (const auto& b : param.basis) CHECK(dot(row.coefficients, b) == 0);
    }
    // Each basis vector is the only one that is nonzero on its own free coordinate.
    for (std::size_t i = 0; i < param.basis.size(); ++i) {
      for (std::size_t l = 0; l < param.basis.size(); ++l) {
        const Rational& e = param.basis[l][i + 1];
        if (l == i) {
          CHECK(sgn(e) > 0);
        } else {
          CHECK(e == 0);
        }
      }
    }
  }
}

TEST_CASE("sampling the planar line") {
  const SolutionParametrization two = solve_affine(build_adc_system(2));
  CHECK(sample_coefficients(two, {Rational(1, 72)}).values ==
        RationalVector{Rational(1, 18), Rational(5, 36), Rational(7, 72)});
  CHECK(sample_coefficients(two, {Rational(0)}).values == RationalVector(3, Rational(1, 9)));
  CHECK(code_of_sample(two, {Rational(1, 36)}) == ErrorCode::OutOfOpenBox);
  CHECK(code_of_sample(two, {Rational(-1, 18)}) == ErrorCode::OutOfOpenBox);
  CHECK(code_of_sample(two, {}) == ErrorCode::DimensionMismatch);
  try {
    sample_coefficients(two, {Rational(1, 36)});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("a_0") != std::string::npos);
  }
  for (int i = -55; i <= 27; ++i) {
    const Rational t = ratio(i, 1000);
    const auto c = sample_coefficients(two, {t});
    CHECK(c.values == RationalVector{Rational(1, 9) - 4 * t, Rational(1, 9) + 2 * t, Rational(1, 9) - t});
  }
}

TEST_CASE("sampled points are valid measures with balanced strips") {
  oracle::Gen gen(47);
  for (unsigned dim = 2; dim <= 4; ++dim) {
    const SolutionParametrization param = solve_affine(build_adc_system(dim));
    int accepted = 0;
    for (int trial = 0; trial < 12; ++trial) {
      RationalVector t(dim - 1);
      for (auto& v : t) v = ratio(gen.integer(-40, 40), 4000 * static_cast<long>(oracle::pow3(dim)));
      LengthClassCoefficients c;
      try {
        c = sample_coefficients(param, t);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfOpenBox);
        continue;
      }
      ++accepted;
      const MeasureHandle m = validate_spec(length_class_spec(c.values));
      CHECK(is_adc_class(*m));
      for (unsigned axis = 0; axis < dim; ++axis) {
        for (int i = -1; i <= 1; ++i) {
          RationalVector lo(dim, Rational(-1, 2)), hi(dim, Rational(1, 2));
          lo[axis] = ratio(2 * i - 1, 6);
          hi[axis] = ratio(2 * i + 1, 6);
          CHECK(box_measure_exact(*m, AxisBox(lo, hi)) == Rational(1, 3));
        }
      }
    }
    CHECK(accepted > 0);
  }
  const MeasureHandle off = validate_spec(length_class_spec({Rational(1, 5), Rational(1, 10), Rational(1, 10)}));
  CHECK_FALSE(is_adc_class(*off));
  CHECK_FALSE(is_adc_class(*validate_spec(uniform_spec(2, 5))));
}

TEST_CASE("linear algebra helpers") {
  CHECK(primitive_integer_vector({Rational(1, 2), Rational(-1, 4), Rational(1, 8)}) == RationalVector{4, -2, 1});
  CHECK(primitive_integer_vector({Rational(-2), Rational(1), Rational(-1, 2)}, 1) == RationalVector{-4, 2, -1});
  std::vector<RationalVector> rows{{1, 2, 3}, {2, 4, 7}};
  const auto pivots = rref(rows, {0, 1, 2});
  CHECK(pivots == std::vector<std::size_t>{0, 2});
  CHECK(rows[0] == RationalVector{1, 2, 0});
  CHECK(rows[1] == RationalVector{0, 0, 1});
}

}  // TEST_SUITE
