#pragma once

// adaptive embedded Dormand-Prince 5(4) on complex vector ODEs with
// cubic-Hermite dense output on the accepted (y, y') pairs

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace mqc {

using StateVec = Eigen::VectorXcd;
using OdeRhs = std::function<StateVec(double, const StateVec&)>;

struct DenseSolution {
  std::vector<double> t;
  std::vector<StateVec> y;
  std::vector<StateVec> f;                        // y' at grid points
  std::vector<std::array<StateVec, 5>> rcont;     // per-interval continuous extension

  size_t interval(double tq) const {
    if (t.size() < 2) throw std::out_of_range("dense output has no intervals");
    const double lo = t.front(), hi = t.back();
    const double eps = 1e-12 * (std::abs(hi - lo) + 1.0);
    if (tq < lo - eps || tq > hi + eps)
      throw std::out_of_range(fmt::format("dense output query t={} outside [{}, {}]", tq, lo, hi));
    auto it = std::lower_bound(t.begin(), t.end(), tq);
    size_t k = (it == t.begin()) ? 0 : static_cast<size_t>(it - t.begin()) - 1;
    return std::min(k, t.size() - 2);
  }

  // fifth-order continuous extension of the accepted steps
  StateVec eval(double tq) const {
    if (t.size() < 2) return y.front();
    const size_t k = interval(tq);
    const double h = t[k + 1] - t[k];
    const double s = std::clamp((tq - t[k]) / h, 0.0, 1.0), s1 = 1.0 - s;
    const auto& r = rcont[k];
    return r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])));
  }

  StateVec deriv(double tq) const {
    const size_t k = interval(tq);
    const double h = t[k + 1] - t[k];
    const double s = std::clamp((tq - t[k]) / h, 0.0, 1.0);
    const auto& r = rcont[k];
    // d/ds of r0 + s r1 + s(1-s) r2 + s^2(1-s) r3 + s^2(1-s)^2 r4
    StateVec d = r[1] + (1.0 - 2.0 * s) * r[2] + (2.0 * s - 3.0 * s * s) * r[3] +
                 (2.0 * s - 6.0 * s * s + 4.0 * s * s * s) * r[4];
    return StateVec(d / h);
  }
};

// integrates y' = rhs(t, y) from t0 to t1 (t1 > t0) with local tolerance tol
inline DenseSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1,
                                      const StateVec& y0, double tol) {
  // Dormand-Prince 5(4) tableau
  static const double c[7] = {0., 1. / 5, 3. / 10, 4. / 5, 8. / 9, 1., 1.};
  static const double a[7][6] = {
      {},
      {1. / 5},
      {3. / 40, 9. / 40},
      {44. / 45, -56. / 15, 32. / 9},
      {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
      {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
      {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
  static const double b5[7] = {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84, 0.};
  static const double b4[7] = {5179. / 57600,    0.,       7571. / 16695, 393. / 640,
                               -92097. / 339200, 187. / 2100, 1. / 40};

  DenseSolution sol;
  double t = t0;
  StateVec y = y0;
  StateVec k[7];
  k[0] = rhs(t, y);
  sol.t.push_back(t);
  sol.y.push_back(y);
  sol.f.push_back(k[0]);

  const double span = t1 - t0;
  double h = span * 1e-3;
  const double hmin = span * 1e-14;

  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < hmin)
      throw std::runtime_error(fmt::format("ode step-size underflow at t={}", t));
    for (int i = 1; i < 7; ++i) {
      StateVec yi = y;
      for (int j = 0; j < i; ++j)
        if (a[i][j] != 0.0) yi += (h * a[i][j]) * k[j];
      k[i] = rhs(t + c[i] * h, yi);
    }
    StateVec y5 = y, err = StateVec::Zero(y.size());
    for (int i = 0; i < 7; ++i) {
      if (b5[i] != 0.0) y5 += (h * b5[i]) * k[i];
      const double d = b5[i] - b4[i];
      if (d != 0.0) err += (h * d) * k[i];
    }
    const double sc = tol * (1.0 + y.cwiseAbs().maxCoeff());
    const double e = err.cwiseAbs().maxCoeff() / sc;
    if (e <= 1.0) { // accept; FSAL: k[6] = f(t+h, y5)
      // dense-output coefficients (hairer's contd5)
      static const double d1 = -12715105075.0 / 11282082432.0;
      static const double d3 = 87487479700.0 / 32700410799.0;
      static const double d4 = -10690763975.0 / 1880347072.0;
      static const double d5 = 701980252875.0 / 199316789632.0;
      static const double d6 = -1453857185.0 / 822651844.0;
      static const double d7 = 69997945.0 / 29380423.0;
      std::array<StateVec, 5> rc;
      const StateVec dy = y5 - y;
      rc[0] = y;
      rc[1] = dy;
      rc[2] = h * k[0] - dy;
      rc[3] = dy - h * k[6] - rc[2];
      rc[4] = h * (d1 * k[0] + d3 * k[2] + d4 * k[3] + d5 * k[4] + d6 * k[5] + d7 * k[6]);
      sol.rcont.push_back(std::move(rc));
      t += h;
      y = y5;
      k[0] = k[6];
      sol.t.push_back(t);
      sol.y.push_back(y);
      sol.f.push_back(k[0]);
    }
    const double fac = std::clamp(0.9 * std::pow(e > 0 ? e : 1e-16, -0.2), 0.2, 5.0);
    h *= fac;
  }
  return sol;
}

} // namespace mqc
