#include "ryflow/params.hpp"

#include <cmath>

namespace ryflow {

double regime_beta_floor(const FlowParams& p) {
  return -p.alpha / static_cast<double>(p.dim - 1);
}

bool in_parabolic_regime(const FlowParams& p) {
  return p.alpha > 0.0 && p.beta > regime_beta_floor(p);
}

void validate_params(const FlowParams& p) {
  if (p.dim < 2) {
    throw InvalidStateError("FlowParams: dim must be >= 2, got " +
                            std::to_string(p.dim));
  }
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw InvalidStateError("FlowParams: alpha and beta must be finite");
  }
  if (!p.allow_degenerate && !in_parabolic_regime(p)) {
    throw InvalidStateError(
        "FlowParams: (alpha, beta) outside the parabolic regime "
        "(need alpha > 0 and beta > -alpha/(dim-1)); "
        "set allow_degenerate to run anyway");
  }
}

}  // namespace ryflow
