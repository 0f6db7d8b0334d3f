#include "qgeo/comparison_report.hpp"

#include <algorithm>
#include <cmath>

#include "qgeo/errors.hpp"
#include "qgeo/info_geometry.hpp"
#include "qgeo/number_theory.hpp"

namespace qgeo {

namespace {

double trajectory_deviation(const GroverInstance& search, const ProbabilityPath& path) {
  double worst = 0.0;
  for (const auto& s : path) {
    const auto expected = analytic_path(search, fold_angle(s.phi));
    for (std::size_t i = 0; i < s.probs.size(); ++i)
      worst = std::max(worst, std::abs(s.probs[i] - expected[i]));
  }
  return worst;
}

void counters_to_json(nlohmann::json& j, const PeriodResult& r) {
  j["method"] = std::string(to_string(r.method));
  j["success"] = r.success;
  j["period"] = r.period;
  j["attempts"] = r.attempts;
  j["oracle_calls"] = r.oracle_calls;
  j["measurements"] = r.measurements;
}

PeriodResult counters_from_json(const nlohmann::json& j) {
  PeriodResult r;
  r.method = parse_method(j.at("method").get<std::string>());
  r.success = j.at("success").get<bool>();
  r.period = j.at("period").get<std::uint64_t>();
  r.attempts = j.at("attempts").get<std::uint64_t>();
  r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
  r.measurements = j.at("measurements").get<std::uint64_t>();
  return r;
}

}  // namespace

ComparisonReport compare_methods(const PeriodInstance& inst, std::uint64_t seed, const PeriodOptions& options,
                                 double sampling_dphi) {
  inst.validate();
  if (!(sampling_dphi > 0.0 && sampling_dphi <= 0.1))
    throw input_error("sampling dphi must lie in (0, 0.1]");

  ComparisonReport report;
  report.seed = seed;
  report.instance = inst;
  report.reference_period = order_bruteforce(inst.base, inst.modulus);
  report.sampling_dphi = sampling_dphi;

  Rng shor_rng(derive_seed(seed, 0));
  auto& shor = report.shor;
  shor.result = shor_period(inst, shor_rng, options);
  shor.non_unitary_projections = shor.result.measurements;
  if (shor.result.attempts > 0)
    shor.measurements_per_attempt = double(shor.result.measurements) / double(shor.result.attempts);
  {
    // Replays the first attempt of shor_period on the same stream.
    Rng replay(derive_seed(seed, 0));
    Rng first(derive_seed(replay.next(), 0));
    shor.projection_fs_distance = shor_attempt(inst, first, options.memory_cap).projection_distance;
  }

  Rng grover_rng(derive_seed(seed, 1));
  auto& grover = report.grover;
  grover.result = grover_period(inst, grover_rng, options);
  grover.non_unitary_projections = grover.result.measurements;

  const GroverInstance search = period_grover_instance(inst);
  grover.marked_count = search.marked_count();
  grover.theta = search.theta();
  grover.steps_per_sample = optimal_iterations(search);
  const auto run = run_grover(search, grover.steps_per_sample);
  grover.marked_mass = marked_mass(search, run.path.back().probs);
  grover.trajectory_max_deviation = trajectory_deviation(search, run.path);

  const auto trace =
      grover_fisher_trace(search, search.theta(), run.path.back().phi, sampling_dphi);
  grover.fisher_trace.reserve(trace.size());
  for (const auto& s : trace) {
    grover.fisher_trace.push_back({s.phi, s.fisher});
    grover.fisher_max_deviation = std::max(grover.fisher_max_deviation, std::abs(s.fisher - 4.0));
  }
  return report;
}

void to_json(nlohmann::json& j, const ComparisonReport& r) {
  j = nlohmann::json::object();
  j["format_version"] = r.format_version;
  j["seed"] = r.seed;
  j["instance"] = {{"modulus", r.instance.modulus},
                   {"base", r.instance.base},
                   {"register_size", r.instance.register_size}};
  j["reference_period"] = r.reference_period;
  j["sampling_dphi"] = r.sampling_dphi;

  nlohmann::json shor;
  counters_to_json(shor, r.shor.result);
  shor["non_unitary_projections"] = r.shor.non_unitary_projections;
  shor["measurements_per_attempt"] = r.shor.measurements_per_attempt;
  shor["projection_fs_distance"] = r.shor.projection_fs_distance;
  j["shor"] = std::move(shor);

  nlohmann::json grover;
  counters_to_json(grover, r.grover.result);
  grover["non_unitary_projections"] = r.grover.non_unitary_projections;
  grover["marked_count"] = r.grover.marked_count;
  grover["theta"] = r.grover.theta;
  grover["steps_per_sample"] = r.grover.steps_per_sample;
  grover["marked_mass"] = r.grover.marked_mass;
  grover["trajectory_max_deviation"] = r.grover.trajectory_max_deviation;
  grover["fisher_max_deviation"] = r.grover.fisher_max_deviation;
  auto trace = nlohmann::json::array();
  for (const auto& p : r.grover.fisher_trace) trace.push_back({{"phi", p.phi}, {"fisher", p.fisher}});
  grover["fisher_trace"] = std::move(trace);
  j["grover_adiabatic"] = std::move(grover);
}

void from_json(const nlohmann::json& j, ComparisonReport& r) {
  try {
    r.format_version = j.at("format_version").get<int>();
    if (r.format_version != kReportFormatVersion)
      throw input_error("unsupported report format_version " + std::to_string(r.format_version));
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& inst = j.at("instance");
    r.instance.modulus = inst.at("modulus").get<std::uint64_t>();
    r.instance.base = inst.at("base").get<std::uint64_t>();
    r.instance.register_size = inst.at("register_size").get<std::uint64_t>();
    r.reference_period = j.at("reference_period").get<std::uint64_t>();
    r.sampling_dphi = j.at("sampling_dphi").get<double>();

    const auto& shor = j.at("shor");
    r.shor.result = counters_from_json(shor);
    r.shor.non_unitary_projections = shor.at("non_unitary_projections").get<std::uint64_t>();
    r.shor.measurements_per_attempt = shor.at("measurements_per_attempt").get<double>();
    r.shor.projection_fs_distance = shor.at("projection_fs_distance").get<double>();

    const auto& grover = j.at("grover_adiabatic");
    r.grover.result = counters_from_json(grover);
    r.grover.non_unitary_projections = grover.at("non_unitary_projections").get<std::uint64_t>();
    r.grover.marked_count = grover.at("marked_count").get<std::uint64_t>();
    r.grover.theta = grover.at("theta").get<double>();
    r.grover.steps_per_sample = grover.at("steps_per_sample").get<std::uint64_t>();
    r.grover.marked_mass = grover.at("marked_mass").get<double>();
    r.grover.trajectory_max_deviation = grover.at("trajectory_max_deviation").get<double>();
    r.grover.fisher_max_deviation = grover.at("fisher_max_deviation").get<double>();
    r.grover.fisher_trace.clear();
    for (const auto& p : grover.at("fisher_trace"))
      r.grover.fisher_trace.push_back({p.at("phi").get<double>(), p.at("fisher").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed comparison report: ") + e.what());
  }
}

}  // namespace qgeo
