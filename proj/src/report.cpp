#include "bernoulli/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace bernoulli {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string ratio_hi(const RationalInterval& ratio) { return ratio.hi_unbounded ? "inf" : to_string(ratio.hi); }

}  // namespace

std::string annulus_csv(const std::vector<AnnulusReport>& reports) {
  std::ostringstream out;
  out << "center,r,R,metric,ann_lo,ann_hi,ball_lo,ball_hi,ratio_lo,ratio_hi,exact_flag\n";
  for (const auto& rep : reports) {
    out << join(rep.center) << ',' << to_string(rep.r) << ',' << to_string(rep.R) << ',' << to_string(rep.metric)
        << ',' << to_string(rep.annulus.lo) << ',' << to_string(rep.annulus.hi) << ',' << to_string(rep.ball.lo)
        << ',' << to_string(rep.ball.hi) << ',' << to_string(rep.ratio.lo) << ',' << ratio_hi(rep.ratio) << ','
        << (rep.exact ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string chain_csv(const std::vector<ChainResult>& rows) {
  std::ostringstream out;
  out << "n,chain_measure,claimed,pass\n";
  for (const auto& row : rows) {
    out << row.n << ',' << to_string(row.measure) << ',' << to_string(row.claimed) << ',' << (row.matches ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string doubling_csv(const DoublingAudit& audit) {
  std::ostringstream out;
  out << "center,r,ratio_lo,ratio_hi,bound,pass\n";
  for (const auto& s : audit.samples) {
    const bool ok = !s.ratio.hi_unbounded && s.ratio.hi <= audit.bound;
    out << join(s.center) << ',' << to_string(s.r) << ',' << to_string(s.ratio.lo) << ',' << ratio_hi(s.ratio) << ','
        << to_string(audit.bound) << ',' << (ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string contiguity_csv(const std::vector<ContiguityResult>& rows) {
  std::ostringstream out;
  out << "generation,pairs,min_ratio,a_min,pass\n";
  for (const auto& row : rows) {
    out << row.generation << ',' << row.pairs << ',' << to_string(row.min_ratio) << ',' << to_string(row.a_min)
        << ',' << (row.holds ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const TrajectorySample& sample) {
  std::ostringstream out;
  out << "n,log_density\n";
  for (std::size_t n = 0; n < sample.values.size(); ++n) out << n << ',' << format_double(sample.values[n]) << '\n';
  return out.str();
}

std::string stats_json(const DistributionStats& stats) {
  nlohmann::ordered_json j;
  j["law"] = std::string(to_string(stats.law));
  j["samples"] = stats.samples;
  j["depth"] = stats.depth;
  j["seed"] = stats.seed;
  j["mean"] = format_double(stats.mean);
  j["variance"] = format_double(stats.variance);
  j["target"] = format_double(stats.target);
  j["tolerance"] = format_double(stats.tolerance);
  j["tolerance_rule"] = stats.tolerance_rule;
  j["pass"] = stats.pass;
  j["mean_slope"] = format_double(stats.mean_slope);
  j["slope_stddev"] = format_double(stats.slope_stddev);
  j["slope_sign_fraction"] = format_double(stats.slope_sign_fraction);
  return j.dump(2) + "\n";
}

std::string entropy_json(const Measure& measure) {
  nlohmann::ordered_json j;
  j["dim"] = measure.dim();
  j["p"] = measure.p();
  j["entropy"] = format_double(entropy(measure));
  j["dimension"] = format_double(dimension(measure));
  j["uniform"] = measure.is_uniform();
  j["expected_log_lebesgue"] = format_double(expected_log(measure, Law::Lebesgue));
  j["expected_log_mu"] = format_double(expected_log(measure, Law::Mu));
  return j.dump(2) + "\n";
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace bernoulli
