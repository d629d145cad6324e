#pragma once

// time-ordered exponentials (numerically exact propagation), interaction-picture
// transforms, and the integrated superoperator L0(t) = \int_0^t l0(t1) dt1

#include "mqc/core.hpp"
#include "mqc/ode.hpp"

#include <memory>
#include <mutex>

namespace mqc {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kSweepTol = 1e-11;

class PropagationResult {
 public:
  PropagationResult(DenseSolution sol, int dim, double tol, double ti, double tf);

  Mat u(double t) const; // dense-output interpolated unitary
  double tol() const { return tol_; }
  double ti() const { return ti_; }
  double tf() const { return tf_; }
  int dim() const { return dim_; }
  const std::vector<double>& grid() const { return sol_.t; }

  // l0(t) X = U0^dag(t) X U0(t)
  Mat l0_apply(const Mat& x, double t) const;
  // l0^dag(t) X = U0(t) X U0^dag(t)
  Mat l0_adjoint_apply(const Mat& x, double t) const;
  // L0(t) X = \int_{ti}^{t} U0^dag(t1) X U0(t1) dt1, via a cached superoperator
  // antiderivative co-integrated on the dense output
  Mat l0_antiderivative_apply(const Mat& x, double t) const;

 private:
  const DenseSolution& l0_cumulative() const;

  DenseSolution sol_;
  int dim_;
  double tol_, ti_, tf_;
  mutable std::once_flag l0_once_;
  mutable std::shared_ptr<DenseSolution> l0_cum_; // vec of N^2 x N^2 superop
};

// solves dU/dt = -i H(t) U, U(ti) = 1; unitarity defect <= 10 tol
std::shared_ptr<PropagationResult> propagate(const TimeDepOperator& h, double ti, double tf,
                                             double tol = kDefaultTol);

// t -> U0^dag(t) op(t) U0(t)
TimeDepOperator interaction_picture(const TimeDepOperator& op, std::shared_ptr<PropagationResult> u0);

// \int_{ti}^{t} U0^dag(t1) op_fixed U0(t1) dt1
Mat l0_antiderivative(const Mat& op_fixed, const PropagationResult& u0, double t);

} // namespace mqc
