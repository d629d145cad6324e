#include "mqc/propagator.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace mqc {

namespace {

StateVec vec_of(const Mat& m) {
  return Eigen::Map<const StateVec>(m.data(), m.size());
}

Mat mat_of(const StateVec& v, int n) {
  return Eigen::Map<const Mat>(v.data(), n, n);
}

} // namespace

PropagationResult::PropagationResult(DenseSolution sol, int dim, double tol, double ti, double tf)
    : sol_(std::move(sol)), dim_(dim), tol_(tol), ti_(ti), tf_(tf) {}

Mat PropagationResult::u(double t) const { return mat_of(sol_.eval(t), dim_); }

Mat PropagationResult::l0_apply(const Mat& x, double t) const {
  const Mat ut = u(t);
  return ut.adjoint() * x * ut;
}

Mat PropagationResult::l0_adjoint_apply(const Mat& x, double t) const {
  const Mat ut = u(t);
  return ut * x * ut.adjoint();
}

const DenseSolution& PropagationResult::l0_cumulative() const {
  std::call_once(l0_once_, [this] {
    const int n = dim_;
    // vec(U^dag X U) = (U^T (x) U^dag) vec X; integrate the kernel matrix
    auto rhs = [this, n](double t, const StateVec&) -> StateVec {
      const Mat ut = u(t);
      const Mat kern = Eigen::kroneckerProduct(ut.transpose(), ut.adjoint().eval()).eval();
      return vec_of(kern);
    };
    StateVec m0 = StateVec::Zero(n * n * n * n);
    l0_cum_ = std::make_shared<DenseSolution>(integrate_dopri5(rhs, ti_, tf_, m0, tol_));
  });
  return *l0_cum_;
}

Mat PropagationResult::l0_antiderivative_apply(const Mat& x, double t) const {
  const int n = dim_;
  const Mat kern = mat_of(l0_cumulative().eval(t), n * n);
  return mat_of(kern * vec_of(x), n);
}

std::shared_ptr<PropagationResult> propagate(const TimeDepOperator& h, double ti, double tf,
                                             double tol) {
  if (tol < 1e-13 || tol > 1e-6)
    throw std::invalid_argument("propagate: tol out of [1e-13, 1e-6]");
  for (int k = 0; k < 7; ++k) {
    const double t = ti + (tf - ti) * (k + 0.5) / 7;
    if (hermiticity_defect(h(t)) > 1e-10)
      throw std::invalid_argument("propagate: non-Hermitian Hamiltonian");
  }
  const int n = static_cast<int>(h(ti).rows());
  const cxd im(0.0, 1.0);
  auto rhs = [&h, n, im](double t, const StateVec& y) -> StateVec {
    const Mat u = mat_of(y, n);
    return vec_of(Mat(-im * h(t) * u));
  };
  StateVec u0 = vec_of(Mat(Mat::Identity(n, n)));
  DenseSolution sol = integrate_dopri5(rhs, ti, tf, u0, tol);
  return std::make_shared<PropagationResult>(std::move(sol), n, tol, ti, tf);
}

TimeDepOperator interaction_picture(const TimeDepOperator& op,
                                    std::shared_ptr<PropagationResult> u0) {
  if (std::abs(op.ti - u0->ti()) > 1e-9 * (1.0 + std::abs(op.ti)) ||
      std::abs(op.tf - u0->tf()) > 1e-9 * (1.0 + std::abs(op.tf)))
    throw std::invalid_argument("interaction_picture: window mismatch");
  auto f = [op, u0](double t) -> Mat { return u0->l0_apply(op(t), t); };
  return TimeDepOperator(op.ti, op.tf, f);
}

Mat l0_antiderivative(const Mat& op_fixed, const PropagationResult& u0, double t) {
  return u0.l0_antiderivative_apply(op_fixed, t);
}

} // namespace mqc
