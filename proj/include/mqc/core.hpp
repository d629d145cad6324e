#pragma once

// Hilbert-space bookkeeping: operators with role invariants, the computational /
// leakage partition, the Q superoperator, and frame transforms.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqc {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-12;   // hermiticity check (max-abs elementwise)
inline constexpr double kUnitTol = 1e-10;   // unitarity check
inline constexpr double kMagnusTol = 1e-10; // anti-hermiticity of Magnus terms

// ---------------------------------------------------------------------------

struct HilbertPartition {
  int n_total = 0; // N
  int n_comp = 0;  // Q computational levels, always the first Q indices
  std::vector<std::string> basis_labels;

  HilbertPartition(int n, int q, std::vector<std::string> labels = {});

  Mat p_comp() const; // projector onto computational subspace
  Mat p_leak() const; // projector onto leakage subspace
};

enum class OpRole { hamiltonian, unitary, magnus, generic };

// dense N x N complex operator with a role flag checked on construction
struct OperatorMatrix {
  Mat m;
  OpRole role = OpRole::generic;

  OperatorMatrix() = default;
  OperatorMatrix(Mat entries, OpRole r);

  int dim() const { return static_cast<int>(m.rows()); }
};

double hermiticity_defect(const Mat& m);
double unitarity_defect(const Mat& m);
double antihermiticity_defect(const Mat& m);

// ---------------------------------------------------------------------------

// operator-valued function of time on [ti, tf]; analytic derivative optional,
// centered finite differences otherwise (h = (tf - ti) * 1e-6)
struct TimeDepOperator {
  double ti = 0.0, tf = 0.0;
  std::function<Mat(double)> eval;
  std::function<Mat(double)> deriv_fn; // may be empty

  TimeDepOperator() = default;
  TimeDepOperator(double t_i, double t_f, std::function<Mat(double)> f,
                  std::function<Mat(double)> df = nullptr)
      : ti(t_i), tf(t_f), eval(std::move(f)), deriv_fn(std::move(df)) {}

  Mat operator()(double t) const { return eval(t); }
  Mat deriv(double t) const;
  bool has_analytic_deriv() const { return static_cast<bool>(deriv_fn); }
};

// full problem statement: partition, H0(t) block-diagonal, perturbation V(t),
// bookkeeping strength epsilon, protocol window, target gate on the Q block
struct LeakageProblem {
  HilbertPartition partition;
  TimeDepOperator h0;
  TimeDepOperator v;
  double epsilon = 1.0;
  double ti = 0.0, tf = 0.0;
  Mat target_gate; // Q x Q

  void validate(int n_time_samples = 7) const; // h0 block-diagonal, v Hermitian
};

// ---------------------------------------------------------------------------

// Q superoperator: nulls the part of an operator acting only in the leakage block
Mat q_superop(const Mat& op, const HilbertPartition& p);

enum class Block { comp, leak };
Mat block_project(const Mat& op, const HilbertPartition& p, Block which);

// S^dag H S - i S^dag (dS/dt); s must be unitary with a derivative available
TimeDepOperator adiabatic_frame(const TimeDepOperator& h, const TimeDepOperator& s);

} // namespace mqc
