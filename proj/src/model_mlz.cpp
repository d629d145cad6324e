#include "mqc/model_mlz.hpp"

#include <fmt/format.h>

#include <cmath>

namespace mqc {

namespace {

HilbertPartition mlz_partition() { return HilbertPartition(4, 2, {"|0>", "|1>", "|2>", "|3>"}); }

// qubit 2x2 blocks in the (|0>, |1>) basis
Eigen::Matrix2cd qubit_h(const MlzParams& p, double tau) {
  Eigen::Matrix2cd h;
  h << tau, p.eta, p.eta, -tau;
  return h;
}

Mat embed_qubit(const Eigen::Matrix2cd& q) {
  Mat m = Mat::Zero(4, 4);
  m.topLeftCorner(2, 2) = q;
  return m;
}

// adiabatic change of basis of the qubit block: columns (ground, excited),
// smooth half-angle gauge with theta = atan2(eta, tau) in (0, pi)
Eigen::Matrix2cd qubit_adiabatic(const MlzParams& p, double tau) {
  const double th = std::atan2(p.eta, tau);
  const double c = std::cos(th / 2.0), s = std::sin(th / 2.0);
  Eigen::Matrix2cd a;
  a << s, c, -c, s;
  return a;
}

// adiabatic-frame qubit Hamiltonian including the non-adiabatic coupling:
// diag(-E, E) - (theta_dot / 2) sigma_y, theta_dot = -eta / E^2
Eigen::Matrix2cd qubit_h_ad(const MlzParams& p, double tau) {
  const double e2 = tau * tau + p.eta * p.eta;
  const double e = std::sqrt(e2);
  const double thdot = -p.eta / e2;
  Eigen::Matrix2cd h;
  h << -e, cxd(0, 1) * thdot / 2.0, cxd(0, -1) * thdot / 2.0, e;
  return h;
}

// superadiabatic basis: eigenvectors of the adiabatic-frame qubit Hamiltonian
// (the frame actually followed under the shortcut drive, so the frame
// Hamiltonian comes out diagonal). columns are ordered (|0~>, |1~>) =
// (excited, ground) branch, and the gauge makes the excited-row component
// real: positive for |0~>, negative for |1~>.
Eigen::Matrix2cd qubit_superadiabatic(const MlzParams& p, double tau) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(qubit_h_ad(p, tau));
  Eigen::Matrix2cd b;
  b.col(0) = es.eigenvectors().col(1);
  b.col(1) = es.eigenvectors().col(0);
  for (int j = 0; j < 2; ++j) {
    const cxd d = b(1, j);
    if (std::abs(d) < 1e-14) throw std::runtime_error("superadiabatic gauge lost");
    b.col(j) *= std::conj(d) / std::abs(d);
  }
  b.col(1) *= -1.0;
  return b;
}

Mat full_frame(const MlzParams& p, double tau) {
  Mat s = Mat::Identity(4, 4);
  s.topLeftCorner(2, 2) = (qubit_adiabatic(p, tau) * qubit_superadiabatic(p, tau)).eval();
  return s;
}

} // namespace

bool MlzParams::equal_couplings() const {
  return e12() == eta && e03() == eta && e23() == eta;
}

void MlzParams::validate() const {
  if (eta <= 0) throw std::invalid_argument("eta must be positive");
  if (e12() < 0 || e03() < 0 || e23() < 0)
    throw std::invalid_argument("couplings must be non-negative");
  if (!(tau_i < tau_f)) throw std::invalid_argument("empty window");
}

Mat mlz_h0_lab(const MlzParams& p, double tau) {
  Mat h = embed_qubit(qubit_h(p, tau));
  h(2, 2) = tau + p.omega2;
  h(3, 3) = -(tau - p.omega3);
  return h;
}

Mat mlz_v_lab(const MlzParams& p) {
  Mat v = Mat::Zero(4, 4);
  v(1, 2) = v(2, 1) = p.e12();
  v(0, 3) = v(3, 0) = p.e03();
  v(2, 3) = v(3, 2) = p.e23();
  return v;
}

LeakageProblem build_mlz(const MlzParams& p) {
  p.validate();
  LeakageProblem prob{mlz_partition(), {}, {}, 1.0, p.tau_i, p.tau_f, Mat::Zero(2, 2)};
  prob.target_gate << 0, 1, 1, 0; // adiabatic passage realizes a NOT gate
  prob.h0 = TimeDepOperator(
      p.tau_i, p.tau_f, [p](double tau) { return mlz_h0_lab(p, tau); },
      [p](double) -> Mat {
        Mat d = Mat::Zero(4, 4);
        d(0, 0) = 1.0;
        d(1, 1) = -1.0;
        d(2, 2) = 1.0;
        d(3, 3) = -1.0;
        return d;
      });
  const Mat v = mlz_v_lab(p);
  prob.v = TimeDepOperator(
      p.tau_i, p.tau_f, [v](double) { return v; },
      [](double) { return Mat(Mat::Zero(4, 4)); });
  return prob;
}

Mat td_reference(const MlzParams& p, double tau) {
  const double amp = p.eta / (2.0 * (tau * tau + p.eta * p.eta));
  // sigma_y with sigma_z = |1><1| - |0><0|: (0,1) element is +i
  Eigen::Matrix2cd w;
  w << 0.0, cxd(0, amp), cxd(0, -amp), 0.0;
  return embed_qubit(w);
}

Mat satd_reference(const MlzParams& p, double tau) {
  const double e2 = tau * tau + p.eta * p.eta;
  const double den = 4.0 * e2 * e2 * e2 + p.eta * p.eta;
  const double az = 3.0 * p.eta * p.eta * tau / den;
  const double ax = 3.0 * p.eta * tau * tau / den;
  Eigen::Matrix2cd w;
  w << -az, ax, ax, az; // sigma_z = |1><1| - |0><0|
  return embed_qubit(w);
}

SadFrame superadiabatic_frame(const MlzParams& p) {
  p.validate();
  SadFrame f;
  f.s = TimeDepOperator(p.tau_i, p.tau_f, [p](double tau) { return full_frame(p, tau); });
  auto s = f.s;
  f.h_sad = TimeDepOperator(p.tau_i, p.tau_f, [p, s](double tau) -> Mat {
    const Mat st = s(tau);
    const Mat dst = s.deriv(tau);
    const Mat h = mlz_h0_lab(p, tau) + mlz_v_lab(p) + satd_reference(p, tau);
    return Mat(st.adjoint() * h * st - cxd(0, 1) * st.adjoint() * dst);
  });
  return f;
}

Mat v_sad_direct(const MlzParams& p, double tau) {
  const Mat s = full_frame(p, tau);
  return Mat(s.adjoint() * mlz_v_lab(p) * s);
}

Mat v_sad_elements(const MlzParams& p, double tau) {
  if (!p.equal_couplings()) return v_sad_direct(p, tau);
  const double eta = p.eta;
  const double e2 = tau * tau + eta * eta;
  const double e = std::sqrt(e2);
  const double e3 = e2 * e;
  const double root = std::sqrt(4.0 * e2 * e2 * e2 + eta * eta);
  const double ap = 2.0 * e3 + root;
  const double am = root - 2.0 * e3;
  const double dm = std::sqrt((tau - e) * (tau - e) + eta * eta);
  const double dp = std::sqrt((e + tau) * (e + tau) + eta * eta);
  const double np = std::sqrt(ap * ap + eta * eta);
  const double nm = std::sqrt(am * am + eta * eta);

  // imaginary parts negated relative to the reference expressions: our frame
  // transform acts with S^dag on columns built from the unconjugated
  // adiabatic-frame eigenvectors, which conjugates the couplings
  const cxd v12(eta * eta * (tau - e) / (dm * np), -eta * (e + tau) * ap / (dp * np));
  const cxd v13(-eta * eta * eta / (dm * np), eta * eta * ap / (dp * np));
  const cxd v02(-eta * eta * (tau - e) / (dm * nm), -eta * (e + tau) * am / (dp * nm));
  const cxd v03(eta * eta * eta / (dm * nm), eta * eta * am / (dp * nm));

  Mat v = Mat::Zero(4, 4);
  v(1, 2) = v12;
  v(1, 3) = v13;
  v(0, 2) = v02;
  v(0, 3) = v03;
  v = (v + v.adjoint()).eval();
  v(2, 3) = p.e23();
  v(3, 2) = p.e23();
  return v;
}

Mat mlz_v_part(const MlzParams& p, double tau) {
  const Mat v = v_sad_direct(p, tau);
  Mat m = Mat::Zero(4, 4);
  m(1, 2) = v(1, 2).real();
  m(1, 3) = v(1, 3).real();
  m(0, 2) = cxd(0, v(0, 2).imag());
  m(0, 3) = cxd(0, v(0, 3).imag());
  return Mat(m + m.adjoint());
}

LeakageProblem build_mlz_sad(const MlzParams& p) {
  auto frame = superadiabatic_frame(p);
  LeakageProblem prob{mlz_partition(), {}, {}, 1.0, p.tau_i, p.tau_f, Mat::Identity(2, 2)};
  auto h_sad = frame.h_sad;
  prob.h0 = TimeDepOperator(p.tau_i, p.tau_f, [h_sad](double tau) -> Mat {
    return Mat(h_sad(tau).diagonal().asDiagonal());
  });
  prob.v = TimeDepOperator(p.tau_i, p.tau_f, [h_sad](double tau) -> Mat {
    const Mat h = h_sad(tau);
    return Mat(h - Mat(h.diagonal().asDiagonal()));
  });
  return prob;
}

MlzCorrections mlz_generating_correction(const MlzParams& p, double tol) {
  auto problem = build_mlz_sad(p);
  auto u0 = propagate(problem.h0, problem.ti, problem.tf, tol);
  const MlzParams params = p;
  const auto part = problem.partition;
  TimeDepOperator r(p.tau_i, p.tau_f, [params, u0, part](double tau) -> Mat {
    return Mat(cxd(0, -1) * q_superop(u0->l0_apply(mlz_v_part(params, tau), tau), part));
  });
  auto w1 = w1_generating(problem, u0, r, 1e-4);
  auto w2 = w2_standard(problem, u0, w1, tol);
  CorrectionSet set;
  set.frame = FrameTag::superadiabatic;
  set.terms = {w1, w2};
  set.strategies = {Strategy::generating, Strategy::second_standard};
  return MlzCorrections{std::move(set), std::move(u0), std::move(problem)};
}

Mat mlz_sad_to_lab(const SadFrame& f, const Mat& w_sad, double tau) {
  const Mat s = f.s(tau);
  return Mat(s * w_sad * s.adjoint());
}

} // namespace mqc
