#pragma once

// Side-by-side run of Shor-style and Grover-loop period finding on one
// instance, with the counters that separate them (measurements, i.e.
// non-unitary projections, and oracle uses) and the Fisher trace of the
// Grover-loop trajectory.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "qgeo/period_finding.hpp"

namespace qgeo {

inline constexpr int kReportFormatVersion = 1;

struct FisherTracePoint {
  double phi = 0.0;
  double fisher = 0.0;
  bool operator==(const FisherTracePoint&) const = default;
};

struct ShorBranch {
  PeriodResult result;
  std::uint64_t non_unitary_projections = 0;
  double measurements_per_attempt = 0.0;
  // Fubini-Study distance jumped by the first attempt's projection.
  double projection_fs_distance = 0.0;
  bool operator==(const ShorBranch&) const = default;
};

struct GroverBranch {
  PeriodResult result;
  std::uint64_t non_unitary_projections = 0;
  std::uint64_t marked_count = 0;  // tau
  double theta = 0.0;
  std::uint64_t steps_per_sample = 0;
  // Marked mass of the simulated amplified state.
  double marked_mass = 0.0;
  // max |p_sim(phi_j) - p_path(phi_j)| over the simulated loop.
  double trajectory_max_deviation = 0.0;
  // max |F - 4| over fisher_trace.
  double fisher_max_deviation = 0.0;
  std::vector<FisherTracePoint> fisher_trace;
  bool operator==(const GroverBranch&) const = default;
};

struct ComparisonReport {
  int format_version = kReportFormatVersion;
  std::uint64_t seed = 0;
  PeriodInstance instance;
  // Order computed by brute force, for reference.
  std::uint64_t reference_period = 0;
  double sampling_dphi = 0.0;
  ShorBranch shor;
  GroverBranch grover;

  bool both_succeeded() const { return shor.result.success && grover.result.success; }
  bool operator==(const ComparisonReport&) const = default;
};

// Shor runs on stream derive_seed(seed, 0), the Grover loop on stream 1.
ComparisonReport compare_methods(const PeriodInstance& inst, std::uint64_t seed,
                                 const PeriodOptions& options = {}, double sampling_dphi = 0.01);

void to_json(nlohmann::json& j, const ComparisonReport& r);
void from_json(const nlohmann::json& j, ComparisonReport& r);

}  // namespace qgeo
