#include "mqc/corrections.hpp"

#include "mqc/quad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <fmt/format.h>

namespace mqc {

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

double sup_norm_on_grid(const TimeDepOperator& op, int n = 33) {
  double m = 0.0;
  for (int k = 0; k <= n; ++k)
    m = std::max(m, op(op.ti + (op.tf - op.ti) * k / n).cwiseAbs().maxCoeff());
  return m;
}

Mat mask_apply(const Mat& m, const Eigen::MatrixXi& mask) {
  Mat r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!mask(i, j)) r(i, j) = 0.0;
  return r;
}

} // namespace

TimeDepOperator w1_derivative(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              double boundary_tol) {
  for (double t : {p.ti, p.tf}) {
    const double b = p.v(t).cwiseAbs().maxCoeff();
    if (b > boundary_tol)
      throw std::invalid_argument(fmt::format(
          "w1_derivative: V({}) has norm {:g} > {:g}; the telescoping cancellation "
          "requires vanishing boundaries (use w1_generating instead)",
          t, b, boundary_tol));
  }
  const auto part = p.partition;
  const double eps = p.epsilon;
  const auto& v = p.v;
  auto f = [part, eps, v, u0](double t) -> Mat {
    const Mat dqv = q_superop(v.deriv(t), part);
    return eps * u0->l0_adjoint_apply(u0->l0_antiderivative_apply(dqv, t), t);
  };
  return TimeDepOperator(p.ti, p.tf, f);
}

TimeDepOperator w1_generating(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              const TimeDepOperator& r, double boundary_tol) {
  if (r(p.tf).cwiseAbs().maxCoeff() > boundary_tol)
    throw std::invalid_argument("w1_generating: r(tf) != 0");
  for (int k = 1; k < 5; ++k) {
    const double t = p.ti + (p.tf - p.ti) * k / 5.0;
    if (antihermiticity_defect(r(t)) > 1e-8)
      throw std::invalid_argument("w1_generating: r not anti-Hermitian");
  }
  const auto part = p.partition;
  const double eps = p.epsilon;
  const auto& v = p.v;
  const cxd im(0.0, 1.0);
  auto f = [part, eps, v, r, u0, im](double t) -> Mat {
    const Mat dqr = q_superop(r.deriv(t), part);
    return im * u0->l0_adjoint_apply(dqr, t) - eps * q_superop(v(t), part);
  };
  return TimeDepOperator(p.ti, p.tf, f);
}

namespace {

// Omega_2 of the w1-corrected interaction Hamiltonian, shared by the W_2 strategies
std::shared_ptr<MagnusTerms> omega2_of_corrected(const LeakageProblem& p,
                                                 std::shared_ptr<PropagationResult> u0,
                                                 const TimeDepOperator& w1, double tol) {
  const double eps = p.epsilon;
  const auto& v = p.v;
  TimeDepOperator v1i(p.ti, p.tf, [eps, v, w1, u0](double t) -> Mat {
    return u0->l0_apply(Mat(eps * v(t) + w1(t)), t);
  });
  return std::make_shared<MagnusTerms>(magnus_terms(v1i, p.ti, p.tf, 2, tol));
}

} // namespace

TimeDepOperator w2_standard(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                            const TimeDepOperator& w1, double tol) {
  auto mt = omega2_of_corrected(p, u0, w1, tol);
  const auto part = p.partition;
  const double eps = p.epsilon;
  const auto& v = p.v;
  const cxd im(0.0, 1.0);
  auto f = [part, eps, v, w1, u0, mt, im](double t) -> Mat {
    // d/dt Omega_2 = 1/2 [ -i V_I^(1), Omega_1 ], evaluated exactly
    const Mat v1i = u0->l0_apply(Mat(eps * v(t) + w1(t)), t);
    const Mat d2 = 0.5 * comm(Mat(-im * v1i), mt->omega(1, t));
    return u0->l0_adjoint_apply(Mat(-im * q_superop(d2, part)), t);
  };
  return TimeDepOperator(p.ti, p.tf, f);
}

TimeDepOperator w2_average(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                           const TimeDepOperator& w1, double tol) {
  auto mt = omega2_of_corrected(p, u0, w1, tol);
  const Mat dom2 = mt->omega(2, p.tf) - mt->omega(2, p.ti);
  const Mat w2i = cxd(0.0, 1.0) * q_superop(dom2, p.partition) / (p.tf - p.ti);
  auto f = [w2i, u0](double t) -> Mat { return u0->l0_adjoint_apply(w2i, t); };
  return TimeDepOperator(p.ti, p.tf, f);
}

TimeDepOperator w2_optimal_gamma(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                                 const TimeDepOperator& w1, double gamma, double tol) {
  const double scale = sup_norm_on_grid(p.v) + 1e-300;
  for (int k = 0; k < 9; ++k) {
    const double t = p.ti + (p.tf - p.ti) * (k + 0.5) / 9;
    const Mat vt = p.v(t);
    if ((q_superop(vt, p.partition) - vt).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw std::invalid_argument(
          "w2_optimal_gamma: requires Q V = V (no leakage-leakage couplings)");
  }
  auto w2s = w2_standard(p, u0, w1, tol);
  auto f = [w2s, gamma](double t) -> Mat { return Mat(-gamma * w2s(t)); };
  return TimeDepOperator(p.ti, p.tf, f);
}

TruncationSplit split_controls(const TimeDepOperator& w1, const Eigen::MatrixXi& mask) {
  for (int i = 0; i < mask.rows(); ++i)
    for (int j = 0; j < mask.cols(); ++j)
      if (mask(i, j) != mask(j, i))
        throw std::invalid_argument("split_controls: mask not Hermitian-symmetric");
  TruncationSplit s;
  s.mask = mask;
  s.ctrl = TimeDepOperator(
      w1.ti, w1.tf, [w1, mask](double t) { return mask_apply(w1(t), mask); },
      [w1, mask](double t) { return mask_apply(w1.deriv(t), mask); });
  s.err = TimeDepOperator(
      w1.ti, w1.tf, [w1, mask](double t) { return Mat(w1(t) - mask_apply(w1(t), mask)); },
      [w1, mask](double t) {
        const Mat d = w1.deriv(t);
        return Mat(d - mask_apply(d, mask));
      });
  return s;
}

Mat first_order_error_integral(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                               const TimeDepOperator& ctrl, double tol) {
  const Mat xi = quad(
      [&](double t) -> Mat { return u0->l0_apply(Mat(p.epsilon * p.v(t) + ctrl(t)), t); },
      p.ti, p.tf, tol);
  return Mat(cxd(0.0, -1.0) * q_superop(xi, p.partition));
}

double fbar_of_error_integral(const Mat& q_xi) {
  const double n = static_cast<double>(q_xi.rows());
  const Mat u = q_xi.exp();
  return (n + std::norm(u.trace())) / (n * (n + 1.0));
}

VariationalResult variational_alpha(const LeakageProblem& p,
                                    std::shared_ptr<PropagationResult> u0,
                                    const std::function<TimeDepOperator(double)>& ctrl_family,
                                    std::pair<double, double> bracket) {
  auto objective = [&](double alpha) {
    return fbar_of_error_integral(first_order_error_integral(p, u0, ctrl_family(alpha), 1e-10));
  };
  // golden-section maximization
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = bracket.first, b = bracket.second;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-5) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = objective(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = objective(d);
    }
  }
  VariationalResult r;
  r.alpha = 0.5 * (a + b);
  r.fbar = objective(r.alpha);
  const double span = bracket.second - bracket.first;
  r.interior = (r.alpha - bracket.first > 1e-4 * span) && (bracket.second - r.alpha > 1e-4 * span);
  return r;
}

TimeDepOperator iterative_ibp(const LeakageProblem& p, std::shared_ptr<PropagationResult> u0,
                              const TruncationSplit& split,
                              const std::function<double(double)>& g_e,
                              const std::function<double(double)>& g_c, int depth) {
  // closure precondition d/dt W1err = g_e W1err + g_c W1ctrl on a sampled grid
  const double scale = sup_norm_on_grid(split.err) + sup_norm_on_grid(split.ctrl) + 1e-300;
  for (int k = 1; k < 16; ++k) {
    const double t = p.ti + (p.tf - p.ti) * k / 16.0;
    const Mat res = split.err.deriv(t) - g_e(t) * split.err(t) - g_c(t) * split.ctrl(t);
    if (res.cwiseAbs().maxCoeff() > 1e-6 * scale)
      throw std::invalid_argument(fmt::format(
          "iterative_ibp: closure d/dt W1err = g_e W1err + g_c W1ctrl fails at t={}", t));
  }
  if (split.err(p.ti).cwiseAbs().maxCoeff() > 1e-6 * scale ||
      split.err(p.tf).cwiseAbs().maxCoeff() > 1e-6 * scale)
    throw std::invalid_argument("iterative_ibp: W1err must vanish at the window boundaries");

  // each level replaces the unattainable remainder E by -l0^dag L0 dE/dt (same
  // first-order integral), keeps the mask-allowed part, recurses on the rest
  const Eigen::MatrixXi mask = split.mask;
  std::vector<TimeDepOperator> ctrl_terms;
  TimeDepOperator e_cur = split.err;
  for (int level = 0; level < depth; ++level) {
    TimeDepOperator y(p.ti, p.tf, [e_cur, u0](double t) -> Mat {
      return Mat(-u0->l0_adjoint_apply(u0->l0_antiderivative_apply(e_cur.deriv(t), t), t));
    });
    ctrl_terms.emplace_back(
        p.ti, p.tf, [y, mask](double t) { return mask_apply(y(t), mask); });
    e_cur = TimeDepOperator(p.ti, p.tf,
                            [y, mask](double t) { return Mat(y(t) - mask_apply(y(t), mask)); });
  }
  auto f = [ctrl_terms, n = p.partition.n_total](double t) -> Mat {
    Mat s = Mat::Zero(n, n);
    for (const auto& c : ctrl_terms) s += c(t);
    return s;
  };
  return TimeDepOperator(p.ti, p.tf, f);
}

TimeDepOperator phase_error_diagonal(const LeakageProblem& p,
                                     std::shared_ptr<PropagationResult> u0,
                                     const TimeDepOperator& w_ctrl) {
  const auto part = p.partition;
  const double eps = p.epsilon;
  const auto& v = p.v;
  // offending computational-block operator, pulled back to the Schroedinger frame
  TimeDepOperator o(p.ti, p.tf, [part, eps, v, w_ctrl, u0](double t) -> Mat {
    const Mat yi = u0->l0_apply(Mat(eps * v(t) + w_ctrl(t)), t);
    return u0->l0_adjoint_apply(block_project(yi, part, Block::comp), t);
  });
  auto f = [o, u0](double t) -> Mat {
    const Mat w = u0->l0_adjoint_apply(u0->l0_antiderivative_apply(o.deriv(t), t), t);
    // keep the diagonal (detuning-like) part, real by Hermiticity
    return Mat(w.diagonal().real().cast<cxd>().asDiagonal());
  };
  return TimeDepOperator(p.ti, p.tf, f);
}

} // namespace mqc
