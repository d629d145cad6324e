#pragma once

// synthesis of correction Hamiltonians W_1, W_2 by the four strategies, plus
// truncated-control handling (variational and iterative optimization)

#include "mqc/core.hpp"
#include "mqc/magnus.hpp"
#include "mqc/propagator.hpp"

namespace mqc {

enum class Strategy {
  derivative,
  generating,
  second_standard,
  second_average,
  optimal_gamma,
  truncated_variational,
  truncated_iterative,
};

enum class FrameTag { lab, adiabatic, superadiabatic };

struct CorrectionSet {
  std::vector<TimeDepOperator> terms; // W_1, W_2, ...
  std::vector<Strategy> strategies;
  FrameTag frame = FrameTag::lab;

  // pointwise sum of all installed corrections
  Mat total(double t) const {
    Mat s = terms.front()(t);
    for (size_t i = 1; i < terms.size(); ++i) s += terms[i](t);
    return s;
  }
};

struct TruncationSplit {
  TimeDepOperator ctrl; // experimentally implementable part
  TimeDepOperator err;  // unimplementable remainder
  Eigen::MatrixXi mask; // per-element implementability pattern (Hermitian-symmetric)
};

// W_1(t) = eps l0^dag(t) L0(t) d/dt QV(t); requires V ~ 0 at both window ends
TimeDepOperator w1_derivative(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              double boundary_tol = 1e-8);

// W_1(t) = i l0^dag(t) d/dt Q r(t) - eps QV(t); r is the target interaction-picture
// Omega_1 profile, anti-Hermitian with r(tf) ~ 0 within boundary_tol
TimeDepOperator w1_generating(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              const TimeDepOperator& r, double boundary_tol = 1e-8);

// W_2(t) = -i l0^dag(t) d/dt Q Omega_2^(1)(t), with Omega_2^(1) the second Magnus
// term of the w1-corrected interaction Hamiltonian
TimeDepOperator w2_standard(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                            const TimeDepOperator& w1, double tol = 1e-10);

// constant-in-interaction-picture realization of the averaged condition
// -i \int W_2I = Q [Omega_2^(1)(tf) - Omega_2^(1)(ti)]
TimeDepOperator w2_average(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                           const TimeDepOperator& w1, double tol = 1e-10);

// ansatz d/dt zeta = gamma d/dt Omega_2^(1); gamma = -2/3 cancels the leading
// third-order leakage, gamma = -1 reproduces w2_standard
TimeDepOperator w2_optimal_gamma(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                                 const TimeDepOperator& w1, double gamma = -2.0 / 3.0,
                                 double tol = 1e-10);

TruncationSplit split_controls(const TimeDepOperator& w1, const Eigen::MatrixXi& mask);

struct VariationalResult {
  double alpha = 0.0;
  double fbar = 0.0;
  bool interior = true; // false when the optimum sits on the bracket boundary
};

// maximizes Fbar(alpha) = (N + |Tr exp[Q Xi_1(alpha, tf)]|^2) / (N (N+1)) over the
// bracket by golden-section search to |dalpha| <= 1e-5
VariationalResult variational_alpha(const LeakageProblem& p,
                                    std::shared_ptr<PropagationResult> u0,
                                    const std::function<TimeDepOperator(double)>& ctrl_family,
                                    std::pair<double, double> bracket = {0.0, 2.0});

// first-order error integral Q Xi_1 = -i \int Q l0(eps V + ctrl) dt and its Fbar
Mat first_order_error_integral(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                               const TimeDepOperator& ctrl, double tol = 1e-10);
double fbar_of_error_integral(const Mat& q_xi);

// integration-by-parts hierarchy: each level replaces the unimplementable part E
// by -l0^dag L0 d/dt E (same integrated first-order effect), keeps the part
// allowed by the mask, and recurses on the remainder
TimeDepOperator iterative_ibp(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              const TruncationSplit& split,
                              const std::function<double(double)>& g_e,
                              const std::function<double(double)>& g_c, int depth = 2);

// diagonal control cancelling the computational-block first-order integral of
// V_I + W_I^ctrl (phase errors), via the derivative-based construction
TimeDepOperator phase_error_diagonal(const LeakageProblem& p,
                                     std::shared_ptr<PropagationResult> u0,
                                     const TimeDepOperator& w_ctrl);

} // namespace mqc
