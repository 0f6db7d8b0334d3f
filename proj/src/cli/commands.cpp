#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qgeo/cli.hpp"
#include "qgeo/comparison_report.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/grover.hpp"
#include "qgeo/info_geometry.hpp"
#include "qgeo/period_finding.hpp"

namespace qgeo::cli {

namespace {

using nlohmann::json;

constexpr double kDeviationTolerance = 1e-6;
constexpr double kIntegratorStep = 1e-4;

struct Common {
  std::string out_path;
  std::string format = "json";
  double dphi = 1e-3;
  std::uint64_t memory_cap = kDefaultMemoryCap;

  std::optional<std::string> out() const {
    return out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);
  }
};

void add_common(CLI::App* cmd, Common& c, bool csv_allowed) {
  cmd->add_option("--out", c.out_path, "Output file (written atomically); stdout when absent");
  if (csv_allowed)
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  else
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json"}));
  cmd->add_option("--memory-cap", c.memory_cap, "Maximum number of complex amplitudes");
}

void check_common(const Common& c) {
  if (!(c.dphi > 0.0 && c.dphi <= 0.1)) throw input_error("--dphi must lie in (0, 0.1]");
  if (c.memory_cap == 0) throw input_error("--memory-cap must be positive");
}

void check_dimension(std::uint64_t dim, std::uint64_t cap) {
  if (dim > cap)
    throw resource_error("dimension " + std::to_string(dim) + " exceeds the memory cap of " +
                         std::to_string(cap) + " amplitudes");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::uint64_t> parse_index_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc{} || end != last)
      throw input_error("marked indices must be a comma-separated list of non-negative integers");
    out.push_back(v);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> probs_of(const StateVector& s) { return probabilities(s).vector(); }

// Fisher value at phi and the geodesic residual of a five-point window of
// spacing h containing phi. The window is kept clear of multiples of pi/2,
// where sqrt(p) has a kink.
struct LocalGeometry {
  double fisher = 0.0;
  double residual = 0.0;
};

LocalGeometry local_geometry(const GroverInstance& inst, double phi, double h) {
  constexpr double quarter = std::numbers::pi / 2;
  for (int start : {-2, -1, -3, 0, -4}) {
    const double lo = phi + start * h;
    const double hi = phi + (start + 4) * h;
    const double next_cut = std::ceil((lo + 1e-12) / quarter) * quarter;
    if (next_cut < hi - 1e-12) continue;
    ProbabilityPath window;
    for (int k = 0; k < 5; ++k) {
      const double p = phi + (start + k) * h;
      window.push_back({p, probs_of(grover_state_at(inst, p)), {}});
    }
    LocalGeometry g;
    g.fisher = fisher_discrete(window)[std::size_t(-start)].fisher;
    g.residual = geodesic_residual(window, 2).max_abs;
    return g;
  }
  throw invariant_violation("no kink-free window around phi");
}

// grover-trace ---------------------------------------------------------------

struct TraceArgs {
  Common common;
  std::uint64_t n = 0;
  std::string marked;
  std::optional<std::uint64_t> steps;
};

struct TraceRow {
  std::uint64_t step;
  double phi, p_marked, p_unmarked, fisher, residual, action;
};

int cmd_grover_trace(const TraceArgs& a, std::ostream& out) {
  check_common(a.common);
  const GroverInstance inst(a.n, parse_index_list(a.marked));
  check_dimension(a.n, a.common.memory_cap);
  const std::uint64_t steps = a.steps.value_or(optimal_iterations(inst));
  const double h = a.common.dphi;

  std::vector<TraceRow> rows;
  StateVector state = new_uniform(a.n);
  double action_sum = 0.0;
  double prev_phi = phi_of_step(inst, 0);
  for (std::uint64_t j = 0; j <= steps; ++j) {
    if (j > 0) state = grover_iteration(std::move(state), inst);
    const double phi = phi_of_step(inst, j);
    const auto p = probs_of(state);
    TraceRow r{j, phi, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::uint64_t i = 0; i < a.n; ++i) (inst.is_marked(i) ? r.p_marked : r.p_unmarked) += p[i];
    const auto g = local_geometry(inst, phi, h);
    r.fisher = g.fisher;
    r.residual = g.residual;
    if (j > 0) action_sum += grover_action(inst, prev_phi, phi, h);
    r.action = action_sum;
    prev_phi = phi;
    rows.push_back(r);
  }

  static const char* const columns[] = {"step",           "phi",
                                        "p_marked",       "p_unmarked",
                                        "fisher_estimate", "geodesic_residual_max",
                                        "action_cumulative"};
  std::string text;
  if (a.common.format == "csv") {
    std::ostringstream s;
    s << "# format_version=" << kFormatVersion << "\n";
    for (std::size_t c = 0; c < std::size(columns); ++c) s << (c ? "," : "") << columns[c];
    s << "\n";
    for (const auto& r : rows)
      s << r.step << ',' << format_double(r.phi) << ',' << format_double(r.p_marked) << ','
        << format_double(r.p_unmarked) << ',' << format_double(r.fisher) << ','
        << format_double(r.residual) << ',' << format_double(r.action) << "\n";
    text = s.str();
  } else {
    json j;
    j["format_version"] = kFormatVersion;
    j["n_items"] = a.n;
    j["marked"] = inst.marked();
    j["steps"] = steps;
    j["dphi"] = h;
    auto arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{columns[0], r.step},
                     {columns[1], r.phi},
                     {columns[2], r.p_marked},
                     {columns[3], r.p_unmarked},
                     {columns[4], r.fisher},
                     {columns[5], r.residual},
                     {columns[6], r.action}});
    j["rows"] = std::move(arr);
    text = dump(j);
  }
  emit(a.common.out(), text, out);
  return kExitOk;
}

// geodesic-check -------------------------------------------------------------

struct GeodesicArgs {
  Common common;
  std::uint64_t n = 0;
};

int cmd_geodesic_check(const GeodesicArgs& a, std::ostream& out, std::ostream& err) {
  check_common(a.common);
  if (a.n < 2) throw input_error("geodesic-check needs N >= 2");
  check_dimension(a.n, a.common.memory_cap);
  const auto inst = GroverInstance::single_target(a.n);
  const std::uint64_t steps = optimal_iterations(inst);

  StateVector state = new_uniform(a.n);
  GeodesicState geo = grover_geodesic_start(inst);
  double dev_sim = 0.0, dev_analytic = 0.0;
  for (std::uint64_t j = 0; j <= steps; ++j) {
    const double phi = phi_of_step(inst, j);
    if (j > 0) {
      state = grover_iteration(std::move(state), inst);
      geo = advance_geodesic(geo, 4.0, phi, kIntegratorStep);
    }
    const auto sim = probs_of(state);
    const auto analytic = analytic_path(inst, fold_angle(phi));
    for (std::uint64_t i = 0; i < a.n; ++i) {
      const double p = geo.x[i] * geo.x[i];
      dev_sim = std::max(dev_sim, std::abs(p - sim[i]));
      dev_analytic = std::max(dev_analytic, std::abs(p - analytic[i]));
    }
  }

  const double h = a.common.dphi;
  const double act = grover_action(inst, inst.theta(), std::numbers::pi / 2, h);
  const double distance =
      fubini_study_distance(new_uniform(a.n), StateVector::basis(RegisterShape::single(a.n), 0));
  const double action_tolerance = 5.0 * h * h;
  const bool passed = dev_sim < kDeviationTolerance && dev_analytic < kDeviationTolerance &&
                      std::abs(act - distance) <= action_tolerance;

  json j;
  j["format_version"] = kFormatVersion;
  j["n_items"] = a.n;
  j["theta"] = inst.theta();
  j["steps"] = steps;
  j["integrator_dt"] = kIntegratorStep;
  j["dphi"] = h;
  j["max_deviation_vs_simulation"] = dev_sim;
  j["max_deviation_vs_analytic"] = dev_analytic;
  j["deviation_tolerance"] = kDeviationTolerance;
  j["action"] = act;
  j["fubini_study_distance"] = distance;
  j["action_error"] = std::abs(act - distance);
  j["action_tolerance"] = action_tolerance;
  j["passed"] = passed;
  emit(a.common.out(), dump(j), out);
  if (!passed) {
    err << "geodesic-check: tolerance exceeded\n";
    return kExitFailed;
  }
  return kExitOk;
}

// factor ---------------------------------------------------------------------

struct FactorArgs {
  Common common;
  std::uint64_t n = 0;
  std::string method = "shor";
  std::uint64_t seed = 0;
  std::uint64_t budget = FactorBudget{}.max_bases;
  std::uint64_t samples = PeriodOptions{}.samples;
};

std::string_view status_name(FactorStatus s) {
  switch (s) {
    case FactorStatus::factored: return "factored";
    case FactorStatus::not_applicable: return "not_applicable";
    case FactorStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

int cmd_factor(const FactorArgs& a, std::ostream& out, std::ostream& err) {
  check_common(a.common);
  if (a.budget == 0) throw input_error("--budget must be positive");
  const Method method = parse_method(a.method);
  FactorBudget budget;
  budget.max_bases = a.budget;
  budget.period.samples = a.samples;
  budget.period.memory_cap = a.common.memory_cap;
  Rng rng(a.seed);
  const auto r = factor(a.n, method, rng, budget);

  json j;
  j["format_version"] = kFormatVersion;
  j["n"] = a.n;
  j["method"] = std::string(to_string(method));
  j["seed"] = a.seed;
  j["status"] = std::string(status_name(r.status));
  j["factors"] = r.first == 0 ? std::vector<std::uint64_t>{} : std::vector<std::uint64_t>{r.first, r.second};
  j["classical"] = r.classical;
  j["note"] = r.note;
  j["bases"] = r.bases;
  j["oracle_calls"] = r.oracle_calls;
  j["measurements"] = r.measurements;
  emit(a.common.out(), dump(j), out);

  switch (r.status) {
    case FactorStatus::factored: return kExitOk;
    case FactorStatus::not_applicable:
      err << "factor: N = " << a.n << " is not applicable: " << r.note;
      if (r.first != 0) err << " (classical factors " << r.first << " x " << r.second << ")";
      err << "\n";
      return kExitUsage;
    case FactorStatus::budget_exhausted: err << "factor: " << r.note << "\n"; return kExitFailed;
  }
  return kExitFailed;
}

// compare --------------------------------------------------------------------

struct CompareArgs {
  Common common;
  std::uint64_t n = 0;
  std::uint64_t y = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = PeriodOptions{}.max_attempts;
  std::uint64_t samples = PeriodOptions{}.samples;
};

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  check_common(a.common);
  if (a.budget == 0) throw input_error("--budget must be positive");
  if (a.n < 3) throw input_error("modulus must be >= 3");
  const auto inst = PeriodInstance::make(a.n, a.y);
  PeriodOptions options;
  options.max_attempts = a.budget;
  options.samples = a.samples;
  options.memory_cap = a.common.memory_cap;
  const auto report = compare_methods(inst, a.seed, options, a.common.dphi);
  emit(a.common.out(), dump(json(report)), out);
  if (!report.both_succeeded()) {
    err << "compare: " << (report.shor.result.success ? "grover-adiabatic" : "shor")
        << " did not find the period within the budget\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grover geometry and period-finding experiments", "qgeo"};
  app.require_subcommand(1);

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("grover-trace", "Per-step Grover trajectory with geometry estimates");
  trace_cmd->add_option("N", trace.n, "Number of items")->required();
  trace_cmd->add_option("--marked", trace.marked, "Comma-separated marked indices")->required();
  trace_cmd->add_option("--steps", trace.steps, "Grover iterations (default floor(pi / (4 theta)))");
  trace_cmd->add_option("--dphi", trace.common.dphi, "Finite-difference spacing in phi");
  trace.common.format = "csv";
  add_common(trace_cmd, trace.common, true);

  GeodesicArgs geo;
  auto* geo_cmd = app.add_subcommand("geodesic-check", "Integrate the geodesic equation against Grover's path");
  geo_cmd->add_option("N", geo.n, "Number of items (one marked)")->required();
  geo_cmd->add_option("--dphi", geo.common.dphi, "Sampling spacing for the action integral");
  add_common(geo_cmd, geo.common, false);

  FactorArgs fac;
  auto* fac_cmd = app.add_subcommand("factor", "Factor N by period finding");
  fac_cmd->add_option("N", fac.n, "Number to factor")->required();
  fac_cmd->add_option("--method", fac.method, "Period finder")->check(CLI::IsMember({"shor", "grover-adiabatic"}));
  fac_cmd->add_option("--seed", fac.seed, "Random seed")->required();
  fac_cmd->add_option("--budget", fac.budget, "Random bases tried before giving up");
  fac_cmd->add_option("--samples", fac.samples, "Grover-loop measurements per round");
  add_common(fac_cmd, fac.common, false);

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Run both period finders and write a comparison report");
  cmp_cmd->add_option("N", cmp.n, "Modulus")->required();
  cmp_cmd->add_option("y", cmp.y, "Base")->required();
  cmp_cmd->add_option("--seed", cmp.seed, "Random seed")->required();
  cmp_cmd->add_option("--budget", cmp.budget, "Attempts (Shor) or sampling rounds (Grover loop)");
  cmp_cmd->add_option("--samples", cmp.samples, "Grover-loop measurements per round");
  cmp.common.dphi = 0.01;
  cmp_cmd->add_option("--dphi", cmp.common.dphi, "Spacing of the Fisher trace");
  add_common(cmp_cmd, cmp.common, false);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("qgeo");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qgeo: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (trace_cmd->parsed()) return cmd_grover_trace(trace, out);
    if (geo_cmd->parsed()) return cmd_geodesic_check(geo, out, err);
    if (fac_cmd->parsed()) return cmd_factor(fac, out, err);
    return cmd_compare(cmp, out, err);
  } catch (const resource_error& e) {
    err << "qgeo: " << e.what() << "\n";
    return kExitResource;
  } catch (const invariant_violation& e) {
    err << "qgeo: internal error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "qgeo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "qgeo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const output_error& e) {
    err << "qgeo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::bad_alloc&) {
    err << "qgeo: out of memory\n";
    return kExitResource;
  }
}

}  // namespace qgeo::cli
