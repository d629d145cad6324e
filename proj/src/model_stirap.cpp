#include "mqc/model_stirap.hpp"

#include <fmt/format.h>

#include <cmath>

namespace mqc {

namespace {

constexpr int kD = 0, kBp = 1, kBm = 2; // adiabatic basis order

Mat w1_pattern() {
  // |d><b-| - |d><b+| + H.c.
  Mat m = Mat::Zero(3, 3);
  m(kD, kBm) = 1.0;
  m(kD, kBp) = -1.0;
  return Mat(m + m.adjoint());
}

Mat v_pattern() {
  // i (|d><b+| + |d><b->|) + H.c.
  Mat m = Mat::Zero(3, 3);
  m(kD, kBp) = cxd(0, 1);
  m(kD, kBm) = cxd(0, 1);
  return Mat(m + m.adjoint());
}

Mat w2_pattern() {
  // |b-><b-| - |b+><b+|
  Mat m = Mat::Zero(3, 3);
  m(kBm, kBm) = 1.0;
  m(kBp, kBp) = -1.0;
  return m;
}

HilbertPartition stirap_partition() {
  return HilbertPartition(3, 1, {"|d>", "|b+>", "|b->"});
}

} // namespace

void StirapParams::validate() const {
  if (g0 <= 0 || nu <= 0 || delta_bound <= 0 || delta_bound >= 0.1)
    throw std::invalid_argument("invalid STIRAP parameters");
}

double StirapParams::t0() const { return std::sqrt(-std::log(delta_bound)) / nu; }

std::pair<double, double> StirapParams::window() const {
  if (shape == StirapShape::vitanov) {
    const double ti = -std::log(-1.0 + M_PI / (2.0 * std::asin(delta_bound))) / nu;
    const double tf = -std::log(-1.0 + M_PI / (2.0 * std::acos(delta_bound))) / nu;
    return {ti, tf};
  }
  // gaussian: [0, 2 t0 + tau] puts G_s(0) = G_p(tf) = delta and theta(tf/2) = pi/4
  return {0.0, 2.0 * t0() + tau()};
}

double stirap_gp(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) return p.g0 * std::sin(stirap_theta(p, t));
  const double u = t - p.t0() - p.tau();
  return p.g0 * std::exp(-p.nu * p.nu * u * u);
}

double stirap_gs(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) return p.g0 * std::cos(stirap_theta(p, t));
  const double u = t - p.t0();
  return p.g0 * std::exp(-p.nu * p.nu * u * u);
}

double stirap_gap(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) return p.g0;
  return std::hypot(stirap_gp(p, t), stirap_gs(p, t));
}

double stirap_theta(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) return (M_PI / 2.0) / (1.0 + std::exp(-p.nu * t));
  return std::atan2(stirap_gp(p, t), stirap_gs(p, t));
}

double stirap_theta_dot(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) {
    const double s = 1.0 / (1.0 + std::exp(-p.nu * t));
    return (M_PI / 2.0) * p.nu * s * (1.0 - s);
  }
  // theta = arctan(gp/gs); theta_dot = (gp' gs - gp gs') / G^2
  const double n2 = p.nu * p.nu;
  const double gp = stirap_gp(p, t), gs = stirap_gs(p, t);
  const double dgp = -2.0 * n2 * (t - p.t0() - p.tau()) * gp;
  const double dgs = -2.0 * n2 * (t - p.t0()) * gs;
  const double g2 = gp * gp + gs * gs;
  return (dgp * gs - gp * dgs) / g2;
}

double stirap_theta_ddot(const StirapParams& p, double t) {
  if (p.shape == StirapShape::vitanov) {
    const double s = 1.0 / (1.0 + std::exp(-p.nu * t));
    return (M_PI / 2.0) * p.nu * p.nu * s * (1.0 - s) * (1.0 - 2.0 * s);
  }
  const double n2 = p.nu * p.nu;
  const double up = t - p.t0() - p.tau(), us = t - p.t0();
  const double gp = stirap_gp(p, t), gs = stirap_gs(p, t);
  const double dgp = -2.0 * n2 * up * gp, dgs = -2.0 * n2 * us * gs;
  const double ddgp = (4.0 * n2 * n2 * up * up - 2.0 * n2) * gp;
  const double ddgs = (4.0 * n2 * n2 * us * us - 2.0 * n2) * gs;
  const double g2 = gp * gp + gs * gs;
  const double num = dgp * gs - gp * dgs;
  const double dnum = ddgp * gs - gp * ddgs;
  const double dg2 = 2.0 * (gp * dgp + gs * dgs);
  return (dnum * g2 - num * dg2) / (g2 * g2);
}

namespace {

LeakageProblem build_adiabatic(const StirapParams& p) {
  p.validate();
  auto [ti, tf] = p.window();
  LeakageProblem prob{stirap_partition(), {}, {}, 1.0, ti, tf, Mat::Identity(1, 1)};
  prob.h0 = TimeDepOperator(
      ti, tf,
      [p](double t) -> Mat {
        Mat h = Mat::Zero(3, 3);
        const double g = stirap_gap(p, t);
        h(kBp, kBp) = g;
        h(kBm, kBm) = -g;
        return h;
      });
  prob.v = TimeDepOperator(
      ti, tf,
      [p](double t) -> Mat { return Mat(stirap_theta_dot(p, t) / std::sqrt(2.0) * v_pattern()); },
      [p](double t) -> Mat {
        return Mat(stirap_theta_ddot(p, t) / std::sqrt(2.0) * v_pattern());
      });
  return prob;
}

} // namespace

LeakageProblem build_constant_gap(const StirapParams& p) {
  if (p.shape != StirapShape::vitanov)
    throw std::invalid_argument("build_constant_gap requires the vitanov shape");
  return build_adiabatic(p);
}

LeakageProblem build_gaussian(const StirapParams& p) {
  if (p.shape != StirapShape::gaussian)
    throw std::invalid_argument("build_gaussian requires the gaussian shape");
  return build_adiabatic(p);
}

Mat stirap_lab_h(const StirapParams& p, double t) {
  Mat h = Mat::Zero(3, 3);
  h(0, 1) = stirap_gp(p, t);
  h(1, 2) = stirap_gs(p, t);
  return Mat(h + h.adjoint());
}

namespace {

Mat frame_s_matrix(double th) {
  // columns: |d>, |b+>, |b-> expressed in the lab basis (|1>, |2>, |3>)
  const double r2 = std::sqrt(0.5);
  Mat s(3, 3);
  s.col(kD) << -std::cos(th), 0.0, std::sin(th);
  s.col(kBp) << r2 * std::sin(th), r2, r2 * std::cos(th);
  s.col(kBm) << r2 * std::sin(th), -r2, r2 * std::cos(th);
  return s;
}

Mat frame_s_deriv(double th, double thdot) {
  const double r2 = std::sqrt(0.5);
  Mat ds(3, 3);
  ds.col(kD) << std::sin(th), 0.0, std::cos(th);
  ds.col(kBp) << r2 * std::cos(th), 0.0, -r2 * std::sin(th);
  ds.col(kBm) << r2 * std::cos(th), 0.0, -r2 * std::sin(th);
  return Mat(thdot * ds);
}

} // namespace

TimeDepOperator stirap_frame_s(const StirapParams& p) {
  auto [ti, tf] = p.window();
  return TimeDepOperator(
      ti, tf, [p](double t) { return frame_s_matrix(stirap_theta(p, t)); },
      [p](double t) { return frame_s_deriv(stirap_theta(p, t), stirap_theta_dot(p, t)); });
}

Mat satd_reference(const StirapParams& p, double t) {
  if (p.shape != StirapShape::vitanov)
    throw std::invalid_argument("satd_reference requires the vitanov shape");
  const double td = stirap_theta_dot(p, t), tdd = stirap_theta_ddot(p, t);
  const double amp = tdd / (std::sqrt(2.0) * p.g0) / (1.0 + td * td / (p.g0 * p.g0));
  return Mat(amp * w1_pattern());
}

Mat stirap_w1_ad(const StirapParams& p, double t) {
  return Mat(stirap_theta_ddot(p, t) / (std::sqrt(2.0) * p.g0) * w1_pattern());
}

Mat stirap_w2_ad(const StirapParams& p, double t) {
  const double td = stirap_theta_dot(p, t);
  return Mat(td * td / (2.0 * p.g0) * w2_pattern());
}

Mat stirap_w2_opt_ad(const StirapParams& p, double t) {
  const double td = stirap_theta_dot(p, t);
  return Mat(td * td / (3.0 * p.g0) * w2_pattern());
}

Eigen::MatrixXi stirap_lab_mask() {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1;
  return m;
}

Mat stirap_ad_to_lab(const StirapParams& p, const Mat& w_ad, double t) {
  const Mat s = frame_s_matrix(stirap_theta(p, t));
  return s * w_ad * s.adjoint();
}

Mat stirap_lab_to_ad(const StirapParams& p, const Mat& w_lab, double t) {
  const Mat s = frame_s_matrix(stirap_theta(p, t));
  return s.adjoint() * w_lab * s;
}

// ---------------------------------------------------------------------------

GaussianStirap::GaussianStirap(const StirapParams& p) : p_(p) {
  if (p.shape != StirapShape::gaussian)
    throw std::invalid_argument("GaussianStirap requires the gaussian shape");
  p.validate();
  auto [ti, tf] = p.window();
  // state: (Delta, xi, i2); Delta kept as the real part of component 0
  auto rhs = [this](double t, const StateVec& y) -> StateVec {
    StateVec dy(3);
    const double g = stirap_gap(p_, t);
    const double td = stirap_theta_dot(p_, t);
    const cxd ph = std::exp(cxd(0.0, y(0).real()));
    dy(0) = g;
    dy(1) = ph * td;
    dy(2) = ph * g * td / p_.g0;
    return dy;
  };
  integrals_ = integrate_dopri5(rhs, ti, tf, StateVec::Zero(3), 1e-12);
}

double GaussianStirap::delta_phase(double t) const { return integrals_.eval(t)(0).real(); }
cxd GaussianStirap::xi(double t) const { return integrals_.eval(t)(1); }
cxd GaussianStirap::i2(double t) const { return integrals_.eval(t)(2); }

double GaussianStirap::gamma(double alpha, double t) const {
  return (alpha * stirap_gap(p_, t) / p_.g0 - 1.0) * stirap_theta_dot(p_, t);
}

TimeDepOperator GaussianStirap::r_generating(double alpha) const {
  auto [ti, tf] = p_.window();
  auto self = *this;
  auto f = [self, alpha](double t) -> Mat {
    const double td = stirap_theta_dot(self.p_, t);
    const cxd ph = std::exp(cxd(0.0, self.delta_phase(t)));
    Mat a = Mat::Zero(3, 3);
    a(kD, kBp) = -std::conj(ph) * td / self.p_.g0;
    a(kD, kBm) = ph * td / self.p_.g0;
    const Mat h = a + a.adjoint();
    return Mat(cxd(0.0, -1.0) / std::sqrt(2.0) * alpha * h);
  };
  return TimeDepOperator(ti, tf, f);
}

TimeDepOperator GaussianStirap::w1_ctrl(double alpha) const {
  auto [ti, tf] = p_.window();
  const StirapParams p = p_;
  return TimeDepOperator(ti, tf, [p, alpha](double t) -> Mat {
    return Mat(alpha * stirap_theta_ddot(p, t) / (std::sqrt(2.0) * p.g0) * w1_pattern());
  });
}

TimeDepOperator GaussianStirap::w1_err(double alpha) const {
  auto [ti, tf] = p_.window();
  auto self = *this;
  return TimeDepOperator(ti, tf, [self, alpha](double t) -> Mat {
    Mat m = Mat::Zero(3, 3);
    m(kD, kBm) = cxd(0, 1);
    m(kD, kBp) = cxd(0, 1);
    Mat h = m + m.adjoint();
    return Mat(self.gamma(alpha, t) / std::sqrt(2.0) * h);
  });
}

TimeDepOperator GaussianStirap::w2(double alpha) const {
  auto [ti, tf] = p_.window();
  auto self = *this;
  return TimeDepOperator(ti, tf, [self, alpha](double t) -> Mat {
    const StirapParams& p = self.p_;
    const double td = stirap_theta_dot(p, t), tdd = stirap_theta_ddot(p, t);
    const cxd j = self.gamma_integral(alpha, t);
    const cxd emid = std::exp(cxd(0.0, -self.delta_phase(t)));
    const double beta = std::imag(emid * td / 2.0 * j) +
                        std::real(alpha * emid * tdd / (2.0 * p.g0) * j);
    return Mat((alpha * td * td / (2.0 * p.g0) + beta) * w2_pattern());
  });
}

double GaussianStirap::fbar_closed(double alpha) const {
  auto [ti, tf] = p_.window();
  (void)ti;
  const double arg = std::abs(gamma_integral(alpha, tf));
  const double b = 1.0 + 2.0 * std::cos(arg);
  return 0.25 + b * b / 12.0;
}

double GaussianStirap::approx_infidelity() const {
  auto [ti, tf] = p_.window();
  (void)ti;
  return std::norm(xi(tf));
}

double GaussianStirap::optimal_alpha() const {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = fbar_closed(c), fd = fbar_closed(d);
  while (b - a > 1e-6) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = fbar_closed(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = fbar_closed(d);
    }
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------

LabPulses corrected_lab_pulses(const StirapParams& p, const TimeDepOperator& w_ad_total,
                               double tol) {
  auto [ti, tf] = p.window();
  auto s = stirap_frame_s(p);
  auto h_lab_tot = [p, w_ad_total, s](double t) -> Mat {
    // invert H_ad = S^dag H S - i S^dag dS/dt for H_ad = H0 + V + W
    const Mat st = s(t);
    const Mat dst = s.deriv(t);
    const Mat h_ad = [&] {
      Mat h = Mat::Zero(3, 3);
      const double g = stirap_gap(p, t);
      h(kBp, kBp) = g;
      h(kBm, kBm) = -g;
      return Mat(h + stirap_theta_dot(p, t) / std::sqrt(2.0) * v_pattern() + w_ad_total(t));
    }();
    return Mat(st * h_ad * st.adjoint() + cxd(0, 1) * dst * st.adjoint());
  };
  // validate the Lambda structure on a probe grid
  const double scale = p.g0;
  for (int k = 0; k <= 32; ++k) {
    const double t = ti + (tf - ti) * k / 32.0;
    const Mat h = h_lab_tot(t);
    double bad = std::abs(h(0, 2));
    for (int i = 0; i < 3; ++i) bad = std::max(bad, std::abs(h(i, i)));
    if (bad > tol * scale)
      throw std::runtime_error(fmt::format(
          "corrected_lab_pulses: correction requires forbidden lab couplings at t={} "
          "(|offending| = {:g})",
          t, bad));
  }
  LabPulses out;
  out.gp = [h_lab_tot](double t) { return h_lab_tot(t)(0, 1); };
  out.gs = [h_lab_tot](double t) { return h_lab_tot(t)(1, 2); };
  return out;
}

} // namespace mqc
