// bpm: command line front end for the Bernoulli product measure library.
//
// Exit codes: 0 success, 1 invalid input (JSON error object on stderr),
// 2 a checked inequality or identity failed.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bernoulli/audit.hpp"
#include "bernoulli/coeff_solver.hpp"
#include "bernoulli/decompose.hpp"
#include "bernoulli/diagnostics.hpp"
#include "bernoulli/report.hpp"
#include "bernoulli/spec_io.hpp"

using namespace bernoulli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCheckFailed = 2;

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;
  unsigned gen_cap = kDefaultGenerationCap;

  unsigned dim = 2;
  std::string t;
  std::string box;
  std::string metric = "linf";
  unsigned depth = 0;
  unsigned gen = 0;
  unsigned grid_gen = 3;
  bool cell_centers = false;
  unsigned k_max = 3;
  unsigned j_max = 6;
  unsigned gen_offset = 2;
  std::string radii;
  std::string law = "mu";
  std::size_t samples = 1000;
  std::string point;
  std::string max_ratio;
  std::string min_growth;
};

int fail(std::string_view code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = std::string(code);
  j["message"] = message;
  std::cerr << j.dump() << '\n';
  return kExitInvalid;
}

MeasureHandle load_measure(const Options& opt) {
  if (opt.config.empty()) throw Error(ErrorCode::MalformedSpec, "--config is required");
  return validate_spec(load_spec(opt.config));
}

unsigned depth_or(const Options& opt, unsigned fallback) { return opt.depth == 0 ? fallback : opt.depth; }

AxisBox parse_box(const std::string& text) {
  RationalVector lo, hi;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const RationalVector pair = parse_rational_list(std::string_view(text).substr(start, end - start));
    if (pair.size() != 2) throw Error(ErrorCode::ParseError, "each box axis needs 'lo,hi'");
    lo.push_back(pair[0]);
    hi.push_back(pair[1]);
    start = end + 1;
  }
  return AxisBox(lo, hi);
}

int run_solve(const Options& opt) {
  const SolutionParametrization param = solve_affine(build_adc_system(opt.dim));
  RationalVector t = opt.t.empty() ? RationalVector(opt.dim - 1, Rational(0)) : parse_rational_list(opt.t);
  const LengthClassCoefficients coeffs = sample_coefficients(param, t);
  const BernoulliSpec spec = length_class_spec(coeffs.values);
  validate_spec(spec);
  emit(opt.out, spec_to_json(spec) + "\n");
  return kExitOk;
}

int run_measure_box(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  const AxisBox box = parse_box(opt.box);
  if (box.dim() != m->dim()) throw Error(ErrorCode::DimensionMismatch, "box and measure differ in dimension");
  emit(opt.out, to_string(box_measure(*m, box)) + "\n");
  return kExitOk;
}

int run_adc(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  const Metric metric = parse_metric(opt.metric);
  CenterGrid grid{m->dim(), m->p(), opt.grid_gen, opt.cell_centers};
  const unsigned g = opt.gen == 0 ? opt.grid_gen + 2 : opt.gen;
  const ScanReport scan = adc_scan(*m, metric, grid, annulus_family(opt.k_max, opt.j_max), g, opt.jobs, opt.gen_cap);
  emit(opt.out, annulus_csv(scan.reports));
  std::cerr << "scan " << scan.grid_description << ": " << scan.reports.size() << " samples, max ratio_hi "
            << (scan.max_unbounded ? std::string("inf") : to_string(scan.max_ratio_upper)) << '\n';
  if (!opt.max_ratio.empty()) {
    const Rational limit = parse_rational(opt.max_ratio);
    if (scan.max_unbounded || scan.max_ratio_upper > limit) return kExitCheckFailed;
  }
  return kExitOk;
}

int run_doubling(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  CenterGrid grid{m->dim(), m->p(), opt.grid_gen, opt.cell_centers};
  const RationalVector radii = opt.radii.empty() ? RationalVector{Rational(1, 6), Rational(1, 18), Rational(1, 54)}
                                                 : parse_rational_list(opt.radii);
  const DoublingAudit audit = doubling_audit(*m, grid, radii, opt.jobs);
  emit(opt.out, doubling_csv(audit));
  std::cerr << "doubling max " << to_string(audit.max_upper) << " bound " << to_string(audit.bound) << '\n';
  return audit.within_bound ? kExitOk : kExitCheckFailed;
}

int run_contiguity(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  std::vector<ContiguityResult> rows;
  bool ok = true;
  for (unsigned n = 1; n <= depth_or(opt, 3); ++n) {
    rows.push_back(contiguous_pair_audit(*m, n));
    ok = ok && rows.back().holds;
  }
  emit(opt.out, contiguity_csv(rows));
  return ok ? kExitOk : kExitCheckFailed;
}

int run_counterexample(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  std::vector<ChainResult> rows;
  bool ok = true;
  for (unsigned n = 1; n <= depth_or(opt, 6); ++n) {
    rows.push_back(chain_measure(*m, n));
    ok = ok && rows.back().matches;
  }
  emit(opt.out, chain_csv(rows));
  return ok ? kExitOk : kExitCheckFailed;
}

int run_blowup(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  const auto series = d1_blowup_series(*m, depth_or(opt, 6), opt.gen_offset, opt.gen_cap);
  emit(opt.out, annulus_csv(series));
  const auto quotients = growth_quotients(series);
  std::optional<Rational> limit;
  if (!opt.min_growth.empty()) limit = parse_rational(opt.min_growth);
  bool ok = true;
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    std::cerr << "n=" << i + 1 << " quotient "
              << (quotients[i] ? format_double(quotients[i]->get_d()) : std::string("undefined")) << '\n';
    if (limit && i + 1 >= 3 && (!quotients[i] || *quotients[i] < *limit)) ok = false;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_entropy(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  emit(opt.out, entropy_json(*m));
  return kExitOk;
}

int run_trajectory(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  const unsigned n = depth_or(opt, 40);
  TrajectorySample sample;
  if (!opt.point.empty()) {
    sample = density_trajectory(*m, parse_rational_list(opt.point), n);
  } else {
    sample = path_trajectory(*m, sample_path(*m, parse_law(opt.law), n, opt.seed));
  }
  emit(opt.out, trajectory_csv(sample));
  return kExitOk;
}

int run_lln(const Options& opt) {
  const MeasureHandle m = load_measure(opt);
  const DistributionStats stats = lln_experiment(*m, parse_law(opt.law), opt.samples, depth_or(opt, 40), opt.seed,
                                                 opt.jobs);
  emit(opt.out, stats_json(stats));
  return stats.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact Bernoulli product measures: construction, annular decay audits, diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", opt.config, "measure spec JSON");
  app.add_option("--out", opt.out, "output file (default stdout)");
  app.add_option("--seed", opt.seed, "base seed");
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--gen-cap", opt.gen_cap, "largest refinement generation allowed")->check(CLI::PositiveNumber);

  auto add_depth = [&](CLI::App* sub) {
    sub->add_option("--depth,--n", opt.depth, "depth n");
  };

  int (*action)(const Options&) = nullptr;
  auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) { sub->callback([&action, fn] { action = fn; }); };

  auto* solve = app.add_subcommand("solve-coeffs", "sample the annular decay coefficient family");
  solve->add_option("--dim", opt.dim, "dimension N")->check(CLI::PositiveNumber);
  solve->add_option("--t", opt.t, "parameters t_1,...,t_{N-1} (default 0)");
  bind(solve, run_solve);

  auto* measure = app.add_subcommand("measure", "evaluate the measure");
  measure->require_subcommand(1);
  auto* box = measure->add_subcommand("box", "exact measure of a half-open box");
  box->add_option("--box", opt.box, "lo,hi;lo,hi;...")->required();
  bind(box, run_measure_box);

  auto* audit = app.add_subcommand("audit", "annular decay, doubling, contiguity and counterexample audits");
  audit->require_subcommand(1);
  auto* adc = audit->add_subcommand("adc", "annulus ratio scan");
  adc->add_option("--metric", opt.metric, "l1, l2 or linf");
  adc->add_option("--gen", opt.gen, "enclosure generation for l2 (default grid-gen + 2)");
  adc->add_option("--grid-gen", opt.grid_gen, "center grid generation");
  adc->add_flag("--cell-centers", opt.cell_centers, "use cube midpoints instead of grid corners");
  adc->add_option("--kmax", opt.k_max, "R = 3^-k / 2 for k <= kmax");
  adc->add_option("--jmax", opt.j_max, "r = R (1 - 3^-j) for 1 <= j <= jmax");
  adc->add_option("--max-ratio", opt.max_ratio, "exit 2 when a ratio upper bound exceeds this");
  bind(adc, run_adc);
  auto* dbl = audit->add_subcommand("doubling", "doubling ratios against 2^N a_min^(-N-3)");
  dbl->add_option("--grid-gen", opt.grid_gen, "center grid generation");
  dbl->add_flag("--cell-centers", opt.cell_centers, "use cube midpoints instead of grid corners");
  dbl->add_option("--radii", opt.radii, "comma separated radii");
  bind(dbl, run_doubling);
  auto* contig = audit->add_subcommand("contiguity", "adjacent cube ratios for generations 1..n");
  add_depth(contig);
  bind(contig, run_contiguity);
  auto* chain = audit->add_subcommand("counterexample", "diagonal chain measures for n = 1..depth");
  add_depth(chain);
  bind(chain, run_counterexample);
  auto* blow = audit->add_subcommand("blowup", "l1 annulus series at (0, 1/2)");
  add_depth(blow);
  blow->add_option("--gen-offset", opt.gen_offset, "enclosure generation n + offset (l2 only)");
  blow->add_option("--min-growth", opt.min_growth, "exit 2 when a quotient for n >= 3 is below this");
  bind(blow, run_blowup);

  auto* diag = app.add_subcommand("diag", "singularity diagnostics");
  diag->require_subcommand(1);
  bind(diag->add_subcommand("entropy", "entropy, dimension and expected logs"), run_entropy);
  auto* traj = diag->add_subcommand("trajectory", "log density along Q_n(x)");
  add_depth(traj);
  traj->add_option("--point", opt.point, "x as x1,x2,... (default: sampled)");
  traj->add_option("--law", opt.law, "lebesgue or mu");
  bind(traj, run_trajectory);
  auto* lln = diag->add_subcommand("lln", "law of large numbers experiment");
  add_depth(lln);
  lln->add_option("--law", opt.law, "lebesgue or mu");
  lln->add_option("--samples", opt.samples, "sample count M")->check(CLI::PositiveNumber);
  bind(lln, run_lln);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what());
  }
  if (action == nullptr) return fail("UsageError", "no command given");
  try {
    return action(opt);
  } catch (const Error& e) {
    return fail(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail("InternalInconsistency", e.what());
  }
}
