#pragma once

#include <cstddef>
#include <vector>

#include "qgeo/state_vector.hpp"

namespace qgeo {

// One point of a one-parameter state family.
struct PathSample {
  double phi = 0.0;
  std::vector<double> probs;
  // Empty unless amplitudes were recorded.
  std::vector<amplitude> amplitudes;
};

// Ordered samples (phi_j, probabilities, optional amplitudes). All samples
// share one dimension; amplitudes are recorded for all samples or none.
class ProbabilityPath {
 public:
  ProbabilityPath() = default;

  // Throws invalid_dimension_error on a dimension mismatch and input_error
  // when amplitudes are present on some samples only.
  void push_back(PathSample sample);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::size_t dim() const { return samples_.empty() ? 0 : samples_.front().probs.size(); }
  bool has_amplitudes() const { return !samples_.empty() && !samples_.front().amplitudes.empty(); }

  const PathSample& operator[](std::size_t i) const { return samples_[i]; }
  const PathSample& front() const { return samples_.front(); }
  const PathSample& back() const { return samples_.back(); }
  auto begin() const { return samples_.begin(); }
  auto end() const { return samples_.end(); }

  void reserve(std::size_t n) { samples_.reserve(n); }

  // Throws input_error unless phi is strictly increasing.
  void require_increasing() const;

 private:
  std::vector<PathSample> samples_;
};

}  // namespace qgeo
