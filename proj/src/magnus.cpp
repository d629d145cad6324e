#include "mqc/magnus.hpp"

#include "mqc/quad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace mqc {

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat slice(const StateVec& y, int k, int n) {
  return Eigen::Map<const Mat>(y.data() + k * n * n, n, n);
}

void put(StateVec& y, int k, const Mat& m, int n) {
  Eigen::Map<Mat>(y.data() + k * n * n, n, n) = m;
}

} // namespace

MagnusTerms::MagnusTerms(DenseSolution sol, int dim, int order, double ti, double tf)
    : sol_(std::move(sol)), dim_(dim), order_(order), ti_(ti), tf_(tf) {}

Mat MagnusTerms::omega(int k, double t) const {
  if (k < 1 || k > 3) throw std::invalid_argument("omega index in {1,2,3}");
  if (k > order_) return Mat::Zero(dim_, dim_);
  return slice(sol_.eval(t), k - 1, dim_);
}

Mat MagnusTerms::omega_deriv(int k, double t) const {
  if (k < 1 || k > 3) throw std::invalid_argument("omega index in {1,2,3}");
  if (k > order_) return Mat::Zero(dim_, dim_);
  return slice(sol_.deriv(t), k - 1, dim_);
}

Mat MagnusTerms::omega_sum(double t) const {
  const StateVec y = sol_.eval(t);
  Mat s = Mat::Zero(dim_, dim_);
  for (int k = 0; k < order_; ++k) s += slice(y, k, dim_);
  return s;
}

MagnusTerms magnus_terms(const TimeDepOperator& v_int, double ti, double tf, int order,
                         double tol) {
  if (order < 1 || order > 3) throw std::invalid_argument("magnus order in {1,2,3}");
  const int n = static_cast<int>(v_int(ti).rows());
  const cxd im(0.0, 1.0);
  auto rhs = [&v_int, n, im, order](double t, const StateVec& y) -> StateVec {
    StateVec dy = StateVec::Zero(3 * n * n);
    const Mat d1 = -im * v_int(t);
    put(dy, 0, d1, n);
    if (order >= 2) {
      const Mat o1 = slice(y, 0, n);
      const Mat d2 = 0.5 * comm(d1, o1);
      put(dy, 1, d2, n);
      if (order >= 3) {
        const Mat o2 = slice(y, 1, n);
        put(dy, 2, Mat(0.5 * comm(d1, o2) - (1.0 / 6.0) * comm(o1, d2)), n);
      }
    }
    return dy;
  };
  StateVec y0 = StateVec::Zero(3 * n * n);
  DenseSolution sol = integrate_dopri5(rhs, ti, tf, y0, tol);
  return MagnusTerms(std::move(sol), n, order, ti, tf);
}

double spectral_norm(const Mat& m) {
  return m.jacobiSvd().singularValues()(0);
}

double convergence_certificate(const TimeDepOperator& v_int, double ti, double tf) {
  return quad([&v_int](double t) { return spectral_norm(v_int(t)); }, ti, tf, 1e-9);
}

Mat error_propagator(const MagnusTerms& terms, double t) {
  return terms.omega_sum(t).exp();
}

} // namespace mqc
