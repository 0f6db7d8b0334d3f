#include "qgeo/probability_path.hpp"

#include <string>

#include "qgeo/errors.hpp"

namespace qgeo {

void ProbabilityPath::push_back(PathSample sample) {
  if (sample.probs.empty()) throw invalid_dimension_error("path sample has no probabilities");
  if (!sample.amplitudes.empty() && sample.amplitudes.size() != sample.probs.size())
    throw invalid_dimension_error("path sample amplitude/probability size mismatch");
  if (!samples_.empty()) {
    if (sample.probs.size() != dim())
      throw invalid_dimension_error("path sample dimension " + std::to_string(sample.probs.size()) +
                                    " differs from path dimension " + std::to_string(dim()));
    if (sample.amplitudes.empty() == has_amplitudes())
      throw input_error("amplitudes must be recorded for every sample or none");
  }
  samples_.push_back(std::move(sample));
}

void ProbabilityPath::require_increasing() const {
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].phi > samples_[i - 1].phi))
      throw input_error("path parameter is not strictly increasing at sample " + std::to_string(i));
}

}  // namespace qgeo
