#pragma once

// adaptive Gauss-Kronrod (G7, K15) quadrature with interval bisection,
// generic over scalar-, vector- or matrix-valued integrands

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mqc {

namespace detail {

// K15 nodes/weights on [-1,1]; G7 weights on the odd-index subset
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

template <typename T>
double abs_norm(const T& v) {
  if constexpr (std::is_arithmetic_v<T>)
    return std::abs(v);
  else if constexpr (std::is_same_v<T, std::complex<double>>)
    return std::abs(v);
  else
    return v.cwiseAbs().maxCoeff();
}

template <typename F, typename T = std::invoke_result_t<F, double>>
T gk15(const F& f, double a, double b, double& err) {
  const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
  T fk = h * kKronrodWeights[0] * f(mid + h * kKronrodNodes[0]);
  T fg = h * kGaussWeights[0] * f(mid + h * kKronrodNodes[1]);
  fk = fk + h * kKronrodWeights[1] * f(mid + h * kKronrodNodes[1]);
  for (int i = 2; i < 15; ++i) {
    const T v = f(mid + h * kKronrodNodes[i]);
    fk = fk + h * kKronrodWeights[i] * v;
    if (i % 2 == 1) fg = fg + h * kGaussWeights[i / 2] * v;
  }
  err = abs_norm<T>(fk - fg);
  return fk;
}

template <typename F, typename T = std::invoke_result_t<F, double>>
T adapt(const F& f, double a, double b, double tol, int depth) {
  double err = 0.0;
  T v = gk15(f, a, b, err);
  if (err <= tol || depth >= 48) {
    if (depth >= 48 && err > tol * 1e3)
      throw std::runtime_error("quadrature failed to converge");
    return v;
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, tol * 0.5, depth + 1) + adapt(f, mid, b, tol * 0.5, depth + 1);
}

} // namespace detail

inline constexpr double kQuadTol = 1e-11;

template <typename F>
auto quad(const F& f, double a, double b, double tol = kQuadTol) {
  using T = std::invoke_result_t<F, double>;
  if (a == b) return T(0.0 * f(a));
  const double sgn = (b >= a) ? 1.0 : -1.0;
  if (sgn < 0) std::swap(a, b);
  T r = detail::adapt(f, a, b, tol, 0);
  return T(sgn * r);
}

} // namespace mqc
