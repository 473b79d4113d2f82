#pragma once

#include <string>

#include "bernoulli/measure.hpp"

namespace bernoulli {

// Measure spec files:
//   {"dim": 2, "p": 3, "mode": "length-class", "coefficients": ["1/18","5/36","7/72"]}
//   {"dim": 2, "p": 3, "mode": "general", "probabilities": [{"nu": [0,1], "p": "1/9"}, ...]}
// Every rational travels as a "num/den" string.

BernoulliSpec parse_spec_json(const std::string& text);
BernoulliSpec load_spec(const std::string& path);

/// Stable key order, canonical rational strings, two-space indent.
std::string spec_to_json(const BernoulliSpec& spec);

}  // namespace bernoulli
