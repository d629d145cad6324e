#include "mqc/model_transmon.hpp"

#include <fmt/format.h>

#include <cmath>

namespace mqc {

namespace {

HilbertPartition transmon_partition() { return HilbertPartition(3, 2, {"|0>", "|1>", "|2>"}); }

} // namespace

std::pair<double, double> TransmonParams::window() const {
  const double a = std::isnan(ti) ? -3.0 / kappa0 : ti;
  const double b = std::isnan(tf) ? 3.0 / kappa0 : tf;
  return {a, b};
}

void TransmonParams::validate() const {
  if (kappa0 <= 0 || width() <= 0) throw std::invalid_argument("invalid transmon pulse");
  if (anharmonicity == 0.0) throw std::invalid_argument("anharmonicity must be nonzero");
  auto [a, b] = window();
  if (!(a < b)) throw std::invalid_argument("empty transmon window");
  if (transmon_kappa(*this, a) > 1e-3 * kappa0 || transmon_kappa(*this, b) > 1e-3 * kappa0)
    throw std::invalid_argument("pulse tails at the window edges exceed 1e-3 kappa0");
}

double transmon_kappa(const TransmonParams& p, double t) {
  const double w = p.width();
  return p.kappa0 * std::exp(-t * t / (w * w));
}

double transmon_kappa_dot(const TransmonParams& p, double t) {
  const double w = p.width();
  return -2.0 * t / (w * w) * transmon_kappa(p, t);
}

double transmon_phi(const TransmonParams& p, double t) {
  auto [a, b] = p.window();
  (void)b;
  const double w = p.width();
  return std::sqrt(M_PI) * p.kappa0 * w * (std::erf(t / w) - std::erf(a / w)) / 2.0;
}

Mat transmon_hadamard() {
  Mat h(2, 2);
  h << 1.0, cxd(0, -1), cxd(0, -1), 1.0;
  return Mat(h / std::sqrt(2.0));
}

LeakageProblem build_transmon(const TransmonParams& p) {
  p.validate();
  auto [a, b] = p.window();
  LeakageProblem prob{transmon_partition(), {}, {}, p.lambda_rel, a, b, transmon_hadamard()};
  prob.h0 = TimeDepOperator(
      a, b,
      [p](double t) -> Mat {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = -p.detuning / 2.0;
        h(1, 1) = p.detuning / 2.0;
        h(2, 2) = 1.5 * p.detuning + p.anharmonicity;
        h(0, 1) = transmon_kappa(p, t);
        h(1, 0) = transmon_kappa(p, t);
        return h;
      },
      [p](double t) -> Mat {
        Mat h = Mat::Zero(3, 3);
        h(0, 1) = transmon_kappa_dot(p, t);
        h(1, 0) = transmon_kappa_dot(p, t);
        return h;
      });
  prob.v = TimeDepOperator(
      a, b,
      [p](double t) -> Mat {
        Mat v = Mat::Zero(3, 3);
        v(1, 2) = transmon_kappa(p, t);
        v(2, 1) = transmon_kappa(p, t);
        return v;
      },
      [p](double t) -> Mat {
        Mat v = Mat::Zero(3, 3);
        v(1, 2) = transmon_kappa_dot(p, t);
        v(2, 1) = transmon_kappa_dot(p, t);
        return v;
      });
  return prob;
}

Mat u0_closed_form(const TransmonParams& p, double t) {
  if (p.detuning != 0.0)
    throw std::invalid_argument("u0_closed_form requires a resonant drive (detuning = 0)");
  auto [a, b] = p.window();
  (void)b;
  const double ph = transmon_phi(p, t);
  Mat u = Mat::Zero(3, 3);
  u(0, 0) = u(1, 1) = std::cos(ph);
  u(0, 1) = u(1, 0) = cxd(0, -1) * std::sin(ph);
  u(2, 2) = std::exp(cxd(0, -p.anharmonicity * (t - a)));
  return u;
}

Mat transmon_w1_ideal(const TransmonParams& p, double t) {
  const double k = transmon_kappa(p, t), kd = transmon_kappa_dot(p, t);
  const double lam = p.lambda_rel, del = p.anharmonicity;
  Mat w = Mat::Zero(3, 3);
  w(1, 2) = cxd(0, 1) * lam * kd / del;
  w(0, 2) = -lam * k * k / del;
  return Mat(w + w.adjoint());
}

Mat transmon_w2_ideal(const TransmonParams& p, double t) {
  const double k = transmon_kappa(p, t);
  const double lam = p.lambda_rel, del = p.anharmonicity;
  Mat w = Mat::Zero(3, 3);
  w(1, 1) = lam * lam * k * k / del;
  w(2, 2) = -lam * lam * k * k / del;
  const double offd = -lam * lam * k * k * k / (2.0 * del * del);
  w(0, 1) += offd;
  w(1, 0) += offd;
  return w;
}

CorrectionSet ideal_corrections(const TransmonParams& p) {
  auto [a, b] = p.window();
  CorrectionSet s;
  s.frame = FrameTag::lab;
  s.terms.emplace_back(a, b, [p](double t) { return transmon_w1_ideal(p, t); });
  s.terms.emplace_back(a, b, [p](double t) { return transmon_w2_ideal(p, t); });
  s.strategies = {Strategy::derivative, Strategy::second_standard};
  return s;
}

Eigen::MatrixXi transmon_mask() {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(3, 3);
  m(1, 2) = m(2, 1) = 1;
  return m;
}

double transmon_g_e(const TransmonParams& p, double t) {
  return 2.0 * transmon_kappa_dot(p, t) / transmon_kappa(p, t);
}

namespace {

// shared envelope of the |1><2| control channel after two rounds of
// integration by parts on the unattainable |0><2| remainder
cxd ctrl_envelope(const TransmonParams& p, double t) {
  const double k = transmon_kappa(p, t), kd = transmon_kappa_dot(p, t);
  const double del = p.anharmonicity;
  const double dk3 = 3.0 * k * k * kd;
  return cxd(-k * k * k / (del * del), kd / del + (2.0 / 3.0) * dk3 / (del * del * del));
}

} // namespace

Mat transmon_w1_ctrl_b(const TransmonParams& p, double t) {
  const cxd e = ctrl_envelope(p, t);
  Mat w = Mat::Zero(3, 3);
  w(1, 2) = p.lambda_rel * e;
  return Mat(w + w.adjoint());
}

Mat transmon_w1_ctrl_c(const TransmonParams& p, double t) {
  const cxd e = ctrl_envelope(p, t);
  Mat w = Mat::Zero(3, 3);
  w(0, 1) = e;
  w(1, 2) = p.lambda_rel * e;
  return Mat(w + w.adjoint());
}

Mat transmon_w1_diag(const TransmonParams& p, double t) {
  const double k2 = transmon_kappa(p, t) * transmon_kappa(p, t);
  const double del = p.anharmonicity;
  const double amp = 2.0 * k2 / del * (1.0 + (2.0 / 3.0) * k2 / (del * del));
  Mat w = Mat::Zero(3, 3);
  w(0, 0) = amp;
  w(1, 1) = -amp;
  w(2, 2) = -3.0 * amp;
  return w;
}

Mat transmon_w2_eff(const TransmonParams& p, double t) {
  const double k2 = transmon_kappa(p, t) * transmon_kappa(p, t);
  const double del = p.anharmonicity, lam2 = p.lambda_rel * p.lambda_rel;
  const double r = k2 / (del * del);
  const double amp = -0.5 * k2 / del * (lam2 + r * (2.0 - lam2) + (4.0 / 3.0) * r * r);
  Mat w = Mat::Zero(3, 3);
  w(0, 0) = amp;
  w(1, 1) = -amp;
  w(2, 2) = -3.0 * amp;
  return w;
}

CorrectionSet constrained_corrections(const TransmonParams& p) {
  auto [a, b] = p.window();
  CorrectionSet s;
  s.frame = FrameTag::lab;
  s.terms.emplace_back(a, b, [p](double t) -> Mat {
    return Mat(transmon_w1_ctrl_c(p, t) + transmon_w1_diag(p, t));
  });
  s.terms.emplace_back(a, b, [p](double t) { return transmon_w2_eff(p, t); });
  s.strategies = {Strategy::truncated_iterative, Strategy::second_standard};
  return s;
}

TransmonQuadratures transmon_quadratures(const TransmonParams& p) {
  TransmonQuadratures q;
  q.kx = [p](double t) {
    const double k = transmon_kappa(p, t), del = p.anharmonicity;
    return k - k * k * k / (del * del);
  };
  q.ky = [p](double t) { return ctrl_envelope(p, t).imag(); };
  q.delta = [p](double t) {
    const double k = transmon_kappa(p, t), del = p.anharmonicity;
    const double lam2 = p.lambda_rel * p.lambda_rel;
    const double k2 = k * k;
    return k2 / del * (2.0 - 0.5 * lam2) + k2 * k2 / (del * del * del) * (1.0 / 3.0 - lam2) -
           (2.0 / 3.0) * k2 * k2 * k2 / std::pow(del, 5);
  };
  return q;
}

CorrectionSet drag_baseline(const TransmonParams& p,
                            const std::optional<DragBaselineConfig>& cfg) {
  if (!cfg)
    throw std::runtime_error(
        "drag_baseline: no baseline coefficients configured; baseline skipped");
  auto [a, b] = p.window();
  const DragBaselineConfig c = *cfg;
  CorrectionSet s;
  s.frame = FrameTag::lab;
  s.terms.emplace_back(a, b, [p, c](double t) -> Mat {
    const double k = transmon_kappa(p, t), kd = transmon_kappa_dot(p, t);
    const double del = p.anharmonicity;
    const double ky = c.cy * kd / del;
    const double dd = c.cd * k * k / del;
    const double dx = c.cx * k * k * k / (del * del);
    // difference between the baseline-corrected Hamiltonian and the bare one
    const Mat h = transmon_h_from_quadratures(p, k + dx, ky, dd);
    Mat h0v = Mat::Zero(3, 3);
    h0v(0, 1) = h0v(1, 0) = k;
    h0v(1, 2) = h0v(2, 1) = p.lambda_rel * k;
    h0v(2, 2) = p.anharmonicity;
    return Mat(h - h0v);
  });
  s.strategies = {Strategy::truncated_variational};
  return s;
}

Mat transmon_h_from_quadratures(const TransmonParams& p, double kx, double ky,
                                double delta) {
  const cxd kap(kx, ky);
  Mat h = Mat::Zero(3, 3);
  h(0, 0) = delta;
  h(1, 1) = -delta;
  h(2, 2) = -3.0 * delta + p.anharmonicity;
  h(0, 1) = kap;
  h(1, 0) = std::conj(kap);
  h(1, 2) = p.lambda_rel * kap;
  h(2, 1) = p.lambda_rel * std::conj(kap);
  return h;
}

} // namespace mqc
