#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "bernoulli/measure.hpp"
#include "oracle.hpp"

using namespace bernoulli;

namespace {

MeasureHandle eps72_measure() {
  return validate_spec(length_class_spec({Rational(1, 18), Rational(5, 36), Rational(7, 72)}));
}

ErrorCode code_of(const BernoulliSpec& spec) {
  try {
    validate_spec(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("spec was accepted");
  return ErrorCode::InternalInconsistency;
}

PAdicPath random_path(oracle::Gen& gen, unsigned dim, unsigned n) {
  PAdicPath path{dim, 3, {}};
  for (unsigned k = 0; k < n; ++k) {
    IndexVector nu{std::vector<int>(dim)};
    for (auto& e : nu.entries) e = static_cast<int>(gen.integer(-1, 1));
    path.steps.push_back(nu);
  }
  return path;
}

std::vector<long> cell_index(const PAdicPath& path) {
  std::vector<long> idx(path.dim, 0);
  for (const auto& step : path.steps) {
    for (unsigned j = 0; j < path.dim; ++j) idx[j] = idx[j] * 3 + step.entries[j] + 1;
  }
  return idx;
}

}  // namespace

TEST_SUITE("measure-core") {

TEST_CASE("validation rejects bad specs") {
  CHECK(code_of(uniform_spec(2, 4)) == ErrorCode::BadDivisionNumber);
  CHECK(code_of(uniform_spec(2, 1)) == ErrorCode::BadDivisionNumber);
  CHECK(code_of(length_class_spec({Rational(1, 9), Rational(1, 9), Rational(1, 8)})) == ErrorCode::NotNormalized);
  CHECK(code_of(length_class_spec({Rational(0), Rational(1, 4), Rational(1, 8)})) ==
        ErrorCode::NonPositiveProbability);
  CHECK(code_of(length_class_spec({Rational(1, 9), Rational(1, 9)})) == ErrorCode::NotNormalized);
  CHECK(code_of(length_class_spec({Rational(1)})) == ErrorCode::MalformedSpec);

  BernoulliSpec five = length_class_spec({Rational(1, 25), Rational(1, 25), Rational(1, 25)});
  five.p = 5;
  CHECK(code_of(five) == ErrorCode::BadDivisionNumber);

  BernoulliSpec general = uniform_spec(2, 5);
  auto& entries = std::get<ProbabilityTable>(general.mode).entries;
  entries.pop_back();
  CHECK(code_of(general) == ErrorCode::MalformedSpec);
  entries.push_back(entries.front());
  CHECK(code_of(general) == ErrorCode::MalformedSpec);
  entries.pop_back();
  entries.push_back({IndexVector{{2, 2}}, Rational(0)});
  CHECK(code_of(general) == ErrorCode::NonPositiveProbability);
}

TEST_CASE("general and length-class modes agree") {
  const MeasureHandle lc = eps72_measure();
  ProbabilityTable table;
  for (std::size_t i = 0; i < lc->child_count(); ++i) table.entries.push_back({lc->index_vector(i), lc->probability(i)});
  const MeasureHandle gm = validate_spec(BernoulliSpec{2, 3, table});
  CHECK_FALSE(gm->is_length_class());
  CHECK(gm->coefficients() == nullptr);
  oracle::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const PAdicPath path = random_path(gen, 2, static_cast<unsigned>(gen.integer(0, 6)));
    CHECK(path_measure(*gm, path) == path_measure(*lc, path));
  }
}

TEST_CASE("basic accessors") {
  const MeasureHandle m = eps72_measure();
  CHECK(m->dim() == 2);
  CHECK(m->child_count() == 9);
  CHECK(m->a_min() == Rational(1, 18));
  CHECK_FALSE(m->is_uniform());
  CHECK(validate_spec(uniform_spec(3))->is_uniform());
  CHECK(length_class_size(2, 1) == 4);
  CHECK(length_class_size(3, 2) == 12);
  CHECK(cell_probability(*m, IndexVector{{0, 0}}) == Rational(1, 18));
  CHECK(cell_probability(*m, IndexVector{{1, 0}}) == Rational(5, 36));
  CHECK(cell_probability(*m, IndexVector{{-1, 1}}) == Rational(7, 72));
  CHECK_THROWS_AS(cell_probability(*m, IndexVector{{2, 0}}), Error);
  for (std::size_t i = 0; i < m->child_count(); ++i) CHECK(m->digit_index(m->index_vector(i)) == i);
}

TEST_CASE("cube measures match direct cell enumeration") {
  const MeasureHandle m = eps72_measure();
  const auto a = oracle::eps72();
  oracle::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = static_cast<unsigned>(gen.integer(0, 7));
    const PAdicPath path = random_path(gen, 2, n);
    CHECK(path_measure(*m, path) == oracle::cell_mass(a, 2, n, cell_index(path)));
  }
}

TEST_CASE("recursion consistency, exhaustive to generation 3") {
  for (const MeasureHandle& m : {eps72_measure(), validate_spec(uniform_spec(2, 5))}) {
    std::vector<PAdicPath> layer{PAdicPath{2, m->p(), {}}};
    for (unsigned n = 1; n <= 3; ++n) {
      std::vector<PAdicPath> next;
      for (const auto& parent : layer) {
        Rational children(0);
        for (std::size_t i = 0; i < m->child_count(); ++i) {
          PAdicPath child = parent;
          child.steps.push_back(m->index_vector(i));
          children += path_measure(*m, child);
          if (n < 3) next.push_back(child);
        }
        CHECK(children == path_measure(*m, parent));
      }
      layer = std::move(next);
    }
  }
}

TEST_CASE("cube geometry and periodic shifts") {
  const MeasureHandle m = eps72_measure();
  const PAdicCube c = cube_from_index(2, 3, 2, {0, 0}, {Integer(4), Integer(0)});
  CHECK(c.lower() == RationalVector{Rational(-1, 18), Rational(-1, 2)});
  CHECK(c.side() == Rational(1, 9));
  CHECK(c.path.steps[0].entries == std::vector<int>{0, -1});
  CHECK(c.path.steps[1].entries == std::vector<int>{0, -1});
  const PAdicCube shifted = cube_from_index(2, 3, 2, {3, -2}, {Integer(4), Integer(0)});
  CHECK(shifted.lower() == RationalVector{Rational(53, 18), Rational(-5, 2)});
  CHECK(cube_measure(*m, shifted) == cube_measure(*m, c));
  const AxisBox box = AxisBox::of(shifted);
  CHECK(box.volume() == Rational(1, 81));
}

TEST_CASE("reflection and permutation symmetry") {
  const MeasureHandle m = validate_spec(length_class_spec({Rational(1, 12), Rational(1, 18), Rational(1, 36),
                                                           Rational(1, 32)}));
  REQUIRE(m->dim() == 3);
  oracle::Gen gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const PAdicPath path = random_path(gen, 3, static_cast<unsigned>(gen.integer(1, 5)));
    const Rational base = path_measure(*m, path);

    PAdicPath flipped = path;
    const auto step = static_cast<std::size_t>(gen.integer(0, static_cast<long>(path.steps.size()) - 1));
    const auto axis = static_cast<std::size_t>(gen.integer(0, 2));
    flipped.steps[step].entries[axis] *= -1;
    CHECK(path_measure(*m, flipped) == base);

    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    PAdicPath permuted = path;
    for (std::size_t s = 0; s < path.steps.size(); ++s) {
      for (int j = 0; j < 3; ++j) permuted.steps[s].entries[j] = path.steps[s].entries[perm[j]];
    }
    CHECK(path_measure(*m, permuted) == base);
  }
}

TEST_CASE("digit extraction and the shift map") {
  const PAdicPath path = point_path(3, {Rational(1, 3), Rational(0)}, 2);
  REQUIRE(path.steps.size() == 2);
  CHECK(path.steps[0].entries == std::vector<int>{1, 0});
  CHECK(path.steps[1].entries == std::vector<int>{0, 0});

  CHECK(shift_map(Rational(0), 3) == 0);
  CHECK(shift_map(Rational(1, 3), 3) == 0);
  CHECK(shift_map(Rational(-1, 2), 3) == Rational(-1, 2));

  oracle::Gen gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational t = ratio(gen.integer(-500, 499), 1000);
    const PAdicPath full = point_path(3, {t}, 6);
    const PAdicPath tail = point_path(3, {shift_map(t, 3)}, 5);
    CHECK(std::equal(tail.steps.begin(), tail.steps.end(), full.steps.begin() + 1));
    // The point lies in the cube its digits name.
    PAdicCube cube{full, {0}};
    CHECK(cube.lower()[0] <= t);
    CHECK(t < cube.lower()[0] + cube.side());
  }
}

TEST_CASE("axis boxes") {
  CHECK_THROWS_AS(AxisBox({Rational(0)}, {Rational(0)}), Error);
  CHECK_THROWS_AS(AxisBox({Rational(0), Rational(0)}, {Rational(1)}), Error);
  const AxisBox cube = AxisBox::cube({Rational(0), Rational(1, 2)}, Rational(1, 6));
  CHECK(cube.lo() == RationalVector{Rational(-1, 6), Rational(1, 3)});
  CHECK(cube.volume() == Rational(1, 9));
}

}  // TEST_SUITE
