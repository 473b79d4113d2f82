#pragma once

#include <string>
#include <vector>

#include "bernoulli/audit.hpp"
#include "bernoulli/diagnostics.hpp"

namespace bernoulli {

// All emitters are byte-deterministic: fixed column order, rationals as
// "num/den", doubles with 17 significant digits, '\n' line ends.

std::string format_double(double value);

/// center,r,R,metric,ann_lo,ann_hi,ball_lo,ball_hi,ratio_lo,ratio_hi,exact_flag
/// Center coordinates are joined with ';'; an unbounded ratio_hi is "inf".
std::string annulus_csv(const std::vector<AnnulusReport>& reports);

std::string chain_csv(const std::vector<ChainResult>& rows);
std::string doubling_csv(const DoublingAudit& audit);
std::string contiguity_csv(const std::vector<ContiguityResult>& rows);
std::string trajectory_csv(const TrajectorySample& sample);

std::string stats_json(const DistributionStats& stats);
std::string entropy_json(const Measure& measure);

/// Writes `content` to `path`, or to stdout when path is empty or "-".
void emit(const std::string& path, const std::string& content);

}  // namespace bernoulli
