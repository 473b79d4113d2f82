#include "bernoulli/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bernoulli {

namespace {

using nlohmann::ordered_json;

Rational rational_field(const ordered_json& value, const std::string& where) {
  if (!value.is_string()) throw Error(ErrorCode::MalformedSpec, where + " must be a \"num/den\" string");
  return parse_rational(value.get<std::string>());
}

}  // namespace

BernoulliSpec parse_spec_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedSpec, "spec must be a JSON object");
  BernoulliSpec spec;
  try {
    const int dim = doc.at("dim").get<int>();
    if (dim <= 0) throw Error(ErrorCode::MalformedSpec, "dim must be positive");
    spec.dim = static_cast<unsigned>(dim);
    const int p = doc.value("p", 3);
    if (p <= 0) throw Error(ErrorCode::BadDivisionNumber, "p must be positive");
    spec.p = static_cast<unsigned>(p);
    const std::string mode = doc.value("mode", std::string("length-class"));
    if (mode == "length-class") {
      LengthClassCoefficients coeffs{spec.dim, {}};
      for (const auto& v : doc.at("coefficients")) coeffs.values.push_back(rational_field(v, "coefficient"));
      spec.mode = coeffs;
    } else if (mode == "general") {
      ProbabilityTable table;
      for (const auto& entry : doc.at("probabilities")) {
        IndexVector nu{entry.at("nu").get<std::vector<int>>()};
        table.entries.push_back({nu, rational_field(entry.at("p"), "probability")});
      }
      spec.mode = table;
    } else {
      throw Error(ErrorCode::MalformedSpec, "unknown mode '" + mode + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("spec field error: ") + e.what());
  }
  return spec;
}

BernoulliSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read spec file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_json(buffer.str());
}

std::string spec_to_json(const BernoulliSpec& spec) {
  ordered_json doc;
  doc["dim"] = spec.dim;
  doc["p"] = spec.p;
  if (const auto* lc = std::get_if<LengthClassCoefficients>(&spec.mode)) {
    doc["mode"] = "length-class";
    doc["coefficients"] = ordered_json::array();
    for (const auto& v : lc->values) doc["coefficients"].push_back(to_string(v));
  } else {
    doc["mode"] = "general";
    doc["probabilities"] = ordered_json::array();
    for (const auto& entry : std::get<ProbabilityTable>(spec.mode).entries) {
      ordered_json e;
      e["nu"] = entry.nu.entries;
      e["p"] = to_string(entry.probability);
      doc["probabilities"].push_back(e);
    }
  }
  return doc.dump(2);
}

}  // namespace bernoulli
