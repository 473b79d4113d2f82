#include "bernoulli/measure.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace bernoulli {

int IndexVector::length() const {
  int total = 0;
  for (int v : entries) total += std::abs(v);
  return total;
}

void check_index(const IndexVector& nu, unsigned dim, unsigned p) {
  if (nu.dim() != dim) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index vector has " + std::to_string(nu.dim()) + " entries, expected " + std::to_string(dim));
  }
  const int q = static_cast<int>((p - 1) / 2);
  for (int v : nu.entries) {
    if (v < -q || v > q) {
      throw Error(ErrorCode::IndexOutOfRange, "index entry " + std::to_string(v) + " outside [-q, q]");
    }
  }
}

RationalVector PAdicCube::lower() const {
  const unsigned p = path.p;
  const Rational half(1, 2);
  const auto q = static_cast<long>((p - 1) / 2);
  RationalVector lo(path.dim);
  for (unsigned j = 0; j < path.dim; ++j) {
    Rational offset = Rational(lattice_shift.empty() ? 0L : static_cast<long>(lattice_shift[j])) - half;
    Rational scale(1);
    for (const auto& step : path.steps) {
      scale /= p;
      offset += scale * (q + step.entries[j]);
    }
    lo[j] = offset;
  }
  return lo;
}

Rational PAdicCube::side() const {
  return Rational(1) / Rational(ipow(Integer(path.p), static_cast<unsigned>(path.generation())));
}

PAdicCube cube_from_index(unsigned dim, unsigned p, unsigned n, const std::vector<long long>& lattice_shift,
                          const std::vector<Integer>& index) {
  PAdicCube cube;
  cube.path.dim = dim;
  cube.path.p = p;
  cube.lattice_shift = lattice_shift;
  if (cube.lattice_shift.empty()) cube.lattice_shift.assign(dim, 0);
  cube.path.steps.assign(n, IndexVector{std::vector<int>(dim, 0)});
  const int q = static_cast<int>((p - 1) / 2);
  for (unsigned j = 0; j < dim; ++j) {
    Integer k = index[j];
    for (unsigned level = n; level-- > 0;) {
      Integer digit = k % p;
      k /= p;
      cube.path.steps[level].entries[j] = static_cast<int>(digit.get_si()) - q;
    }
  }
  return cube;
}

AxisBox::AxisBox(RationalVector lo, RationalVector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds must have the same positive dimension");
  }
  for (std::size_t j = 0; j < lo_.size(); ++j) {
    if (!(lo_[j] < hi_[j])) throw Error(ErrorCode::MalformedSpec, "box needs lo < hi on every axis");
  }
}

Rational AxisBox::volume() const {
  Rational v(1);
  for (std::size_t j = 0; j < lo_.size(); ++j) v *= hi_[j] - lo_[j];
  return v;
}

AxisBox AxisBox::cube(const RationalVector& center, const Rational& radius) {
  RationalVector lo(center.size()), hi(center.size());
  for (std::size_t j = 0; j < center.size(); ++j) {
    lo[j] = center[j] - radius;
    hi[j] = center[j] + radius;
  }
  return AxisBox(std::move(lo), std::move(hi));
}

AxisBox AxisBox::of(const PAdicCube& cube) {
  RationalVector lo = cube.lower();
  const Rational side = cube.side();
  RationalVector hi(lo.size());
  for (std::size_t j = 0; j < lo.size(); ++j) hi[j] = lo[j] + side;
  return AxisBox(std::move(lo), std::move(hi));
}

Integer length_class_size(unsigned dim, unsigned k) {
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), dim, k);
  return ipow(Integer(2), k) * binom;
}

const LengthClassCoefficients* Measure::coefficients() const {
  return std::get_if<LengthClassCoefficients>(&spec_.mode);
}

unsigned Measure::digit(std::size_t digit_index, unsigned axis) const {
  for (unsigned j = dim_ - 1; j > axis; --j) digit_index /= p_;
  return static_cast<unsigned>(digit_index % p_);
}

std::size_t Measure::digit_index(const IndexVector& nu) const {
  check_index(nu, dim_, p_);
  std::size_t idx = 0;
  const int q_ = static_cast<int>(q());
  for (int v : nu.entries) idx = idx * p_ + static_cast<std::size_t>(v + q_);
  return idx;
}

IndexVector Measure::index_vector(std::size_t digit_index) const {
  IndexVector nu{std::vector<int>(dim_)};
  const int q_ = static_cast<int>(q());
  for (unsigned j = dim_; j-- > 0;) {
    nu.entries[j] = static_cast<int>(digit_index % p_) - q_;
    digit_index /= p_;
  }
  return nu;
}

MeasureHandle validate_spec(const BernoulliSpec& spec) {
  if (spec.p < 3 || spec.p % 2 == 0) {
    throw Error(ErrorCode::BadDivisionNumber, "division number must be odd and >= 3, got " + std::to_string(spec.p));
  }
  if (spec.dim == 0) throw Error(ErrorCode::MalformedSpec, "dimension must be positive");
  std::size_t children = 1;
  for (unsigned j = 0; j < spec.dim; ++j) {
    children *= spec.p;
    if (children > (std::size_t{1} << 24)) throw Error(ErrorCode::MalformedSpec, "p^N is too large");
  }

  std::shared_ptr<Measure> m(new Measure());
  m->spec_ = spec;
  m->dim_ = spec.dim;
  m->p_ = spec.p;
  m->probabilities_.assign(children, Rational(0));

  if (const auto* lc = std::get_if<LengthClassCoefficients>(&spec.mode)) {
    if (spec.p != 3) throw Error(ErrorCode::BadDivisionNumber, "length-class mode requires p = 3");
    if (lc->dim != spec.dim || lc->values.size() != spec.dim + 1) {
      throw Error(ErrorCode::MalformedSpec, "length-class mode needs N + 1 coefficients");
    }
    Rational total(0);
    for (unsigned k = 0; k <= spec.dim; ++k) {
      if (sgn(lc->values[k]) <= 0) {
        throw Error(ErrorCode::NonPositiveProbability, "coefficient a_" + std::to_string(k) + " is not positive");
      }
      total += Rational(length_class_size(spec.dim, k)) * lc->values[k];
    }
    if (total != 1) {
      throw Error(ErrorCode::NotNormalized, "sum_k 2^k C(N,k) a_k = " + to_string(total) + ", expected 1");
    }
    for (std::size_t i = 0; i < children; ++i) {
      m->probabilities_[i] = lc->values[static_cast<std::size_t>(m->index_vector(i).length())];
    }
  } else {
    const auto& table = std::get<ProbabilityTable>(spec.mode);
    std::vector<bool> seen(children, false);
    for (const auto& entry : table.entries) {
      const std::size_t idx = m->digit_index(entry.nu);
      if (seen[idx]) throw Error(ErrorCode::MalformedSpec, "duplicate child label in probability table");
      seen[idx] = true;
      m->probabilities_[idx] = entry.probability;
    }
    Rational total(0);
    for (std::size_t i = 0; i < children; ++i) {
      if (!seen[i]) throw Error(ErrorCode::MalformedSpec, "probability table misses a child label");
      if (sgn(m->probabilities_[i]) <= 0) {
        throw Error(ErrorCode::NonPositiveProbability, "child probabilities must be positive");
      }
      total += m->probabilities_[i];
    }
    if (total != 1) throw Error(ErrorCode::NotNormalized, "probabilities sum to " + to_string(total) + ", expected 1");
  }

  m->a_min_ = *std::min_element(m->probabilities_.begin(), m->probabilities_.end());
  m->uniform_ = std::all_of(m->probabilities_.begin(), m->probabilities_.end(),
                            [&](const Rational& v) { return v == m->probabilities_.front(); });
  return m;
}

BernoulliSpec length_class_spec(const RationalVector& coefficients) {
  BernoulliSpec spec;
  spec.dim = static_cast<unsigned>(coefficients.size() - 1);
  spec.p = 3;
  spec.mode = LengthClassCoefficients{spec.dim, coefficients};
  return spec;
}

BernoulliSpec uniform_spec(unsigned dim, unsigned p) {
  if (p == 3) {
    return length_class_spec(RationalVector(dim + 1, Rational(1) / Rational(ipow(Integer(3), dim))));
  }
  BernoulliSpec spec;
  spec.dim = dim;
  spec.p = p;
  ProbabilityTable table;
  const Rational each = Rational(1) / Rational(ipow(Integer(p), dim));
  std::size_t children = static_cast<std::size_t>(ipow(Integer(p), dim).get_ui());
  const int q = static_cast<int>((p - 1) / 2);
  for (std::size_t i = 0; i < children; ++i) {
    IndexVector nu{std::vector<int>(dim)};
    std::size_t rest = i;
    for (unsigned j = dim; j-- > 0;) {
      nu.entries[j] = static_cast<int>(rest % p) - q;
      rest /= p;
    }
    table.entries.push_back({nu, each});
  }
  spec.mode = table;
  return spec;
}

Rational cell_probability(const Measure& measure, const IndexVector& nu) {
  return measure.probability(measure.digit_index(nu));
}

namespace {

std::string path_key(const Measure& measure, const PAdicPath& path) {
  std::string key;
  key.reserve(path.steps.size() * 3);
  for (const auto& step : path.steps) {
    std::size_t idx = measure.digit_index(step);
    do {
      key.push_back(static_cast<char>('0' + idx % 64));
      idx /= 64;
    } while (idx);
    key.push_back('.');
  }
  return key;
}

}  // namespace

Rational path_measure(const Measure& measure, const PAdicPath& path) {
  if (path.dim != measure.dim() || path.p != measure.p()) {
    throw Error(ErrorCode::DimensionMismatch, "path does not match the measure's (N, p)");
  }
  const std::string key = path_key(measure, path);
  if (auto hit = measure.cube_cache().find(key)) return *hit;
  Rational value(1);
  for (const auto& step : path.steps) value *= measure.probability(measure.digit_index(step));
  measure.cube_cache().insert(key, value);
  return value;
}

Rational cube_measure(const Measure& measure, const PAdicCube& cube) { return path_measure(measure, cube.path); }

Rational shift_map(const Rational& t, unsigned p) {
  const Rational q((p - 1) / 2);
  return Rational(p) * t + q - Rational(floor(Rational(p) * (t + Rational(1, 2))));
}

PAdicPath point_path(unsigned p, const RationalVector& x, unsigned n) {
  PAdicPath path;
  path.dim = static_cast<unsigned>(x.size());
  path.p = p;
  path.steps.assign(n, IndexVector{std::vector<int>(x.size())});
  const int q = static_cast<int>((p - 1) / 2);
  for (std::size_t j = 0; j < x.size(); ++j) {
    Rational t = frac(x[j] + Rational(1, 2));
    for (unsigned level = 0; level < n; ++level) {
      t *= p;
      const Integer digit = floor(t);
      t -= Rational(digit);
      path.steps[level].entries[j] = static_cast<int>(digit.get_si()) - q;
    }
  }
  return path;
}

}  // namespace bernoulli
