#include "doctest.h"

#include "bernoulli/report.hpp"
#include "bernoulli/spec_io.hpp"

using namespace bernoulli;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    validate_spec(parse_spec_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("spec accepted");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("spec files round trip") {
  const std::string text = R"({"dim": 2, "p": 3, "mode": "length-class", "coefficients": ["1/18","5/36","7/72"]})";
  const BernoulliSpec spec = parse_spec_json(text);
  const MeasureHandle m = validate_spec(spec);
  CHECK(m->a_min() == Rational(1, 18));
  const std::string dumped = spec_to_json(spec);
  CHECK(dumped.find("\"coefficients\"") != std::string::npos);
  CHECK(spec_to_json(parse_spec_json(dumped)) == dumped);

  const BernoulliSpec general = uniform_spec(1, 5);
  const std::string g = spec_to_json(general);
  CHECK(g.find("\"general\"") != std::string::npos);
  const MeasureHandle back = validate_spec(parse_spec_json(g));
  CHECK(back->is_uniform());
  CHECK(back->p() == 5);
}

TEST_CASE("spec file errors") {
  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code("[1, 2]") == ErrorCode::MalformedSpec);
  CHECK(parse_code(R"({"p": 3, "coefficients": ["1/3","1/3"]})") == ErrorCode::MalformedSpec);
  CHECK(parse_code(R"({"dim": 1, "coefficients": [0.3333, "1/3"]})") == ErrorCode::MalformedSpec);
  CHECK(parse_code(R"({"dim": 1, "coefficients": ["1/3", "x"]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim": 1, "coefficients": ["1/3", "1/4"]})") == ErrorCode::NotNormalized);
  CHECK(parse_code(R"({"dim": 1, "p": 4, "mode": "general", "probabilities": []})") == ErrorCode::BadDivisionNumber);
  CHECK(parse_code(R"({"dim": 1, "mode": "other"})") == ErrorCode::MalformedSpec);
  CHECK(parse_code(R"({"dim": 1, "mode": "general", "probabilities": [{"nu": [0], "p": "1/3"}]})") ==
        ErrorCode::MalformedSpec);
  try {
    load_spec("/nonexistent/spec.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("annulus csv") {
  CHECK(annulus_csv({}) == "center,r,R,metric,ann_lo,ann_hi,ball_lo,ball_hi,ratio_lo,ratio_hi,exact_flag\n");
  const MeasureHandle m = validate_spec(uniform_spec(2));
  const AnnulusReport rep = annulus_ratio(*m, Metric::LINF, {Rational(0), Rational(-1, 6)}, Rational(1, 3),
                                          Rational(1, 2), 0);
  const std::string csv = annulus_csv({rep});
  CHECK(csv ==
        "center,r,R,metric,ann_lo,ann_hi,ball_lo,ball_hi,ratio_lo,ratio_hi,exact_flag\n"
        "0/1;-1/6,1/3,1/2,linf,5/9,5/9,1/1,1/1,5/3,5/3,1\n");
  CHECK(annulus_csv({rep}) == csv);

  AnnulusReport open = rep;
  open.ratio.hi_unbounded = true;
  open.exact = false;
  CHECK(annulus_csv({open}).find(",inf,0\n") != std::string::npos);
}

TEST_CASE("other reports") {
  CHECK(chain_csv({{2, Rational(9, 64), Rational(9, 64), true}}) == "n,chain_measure,claimed,pass\n2,9/64,9/64,1\n");
  CHECK(trajectory_csv(TrajectorySample{{}, {0.0, -0.5}, 0.0}) == "n,log_density\n0,0\n1,-0.5\n");
  CHECK(format_double(0.1) == "0.10000000000000001");
  const MeasureHandle m = validate_spec(uniform_spec(2));
  const std::string stats = stats_json(lln_experiment(*m, Law::Mu, 3, 4, 9));
  CHECK(stats.find("\"tolerance_rule\"") != std::string::npos);
  CHECK(stats == stats_json(lln_experiment(*m, Law::Mu, 3, 4, 9)));
  CHECK(entropy_json(*m).find("\"dimension\": \"2\"") != std::string::npos);
}

}  // TEST_SUITE
