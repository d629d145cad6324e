#pragma once

// state fidelity, state-averaged fidelity, and error-scaling-exponent fits

#include "mqc/core.hpp"

namespace mqc {

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> samples; // (eps, error)
  bool conclusive = false;                        // >=4 samples, >=1 decade, r^2 >= 0.98
};

// |<target| u_final |initial>|^2
double state_fidelity(const Mat& u_final, int initial, int target);

enum class FBarConvention {
  full_trace,    // (N + |Tr U_err|^2) / (N (N + 1)), trace over all N levels
  computational, // average of per-state fidelities over the Q computational basis states
};

// state-averaged gate fidelity of an error propagator
double avg_fidelity(const Mat& u_err_final, const HilbertPartition& p,
                    FBarConvention conv = FBarConvention::full_trace);

// least-squares slope of log(error) vs log(eps)
ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& samples);

} // namespace mqc
