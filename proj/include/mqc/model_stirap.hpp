#pragma once

// Lambda-system benchmark: constant-gap and Gaussian STIRAP builders, adiabatic
// frame, SATD reference, analytic corrections, and lab-frame pulse synthesis.
// Basis order: (|d>, |b+>, |b->) adiabatic, (|1>, |2>, |3>) lab.

#include "mqc/core.hpp"
#include "mqc/corrections.hpp"
#include "mqc/ode.hpp"

namespace mqc {

enum class StirapShape { vitanov, gaussian };

struct StirapParams {
  double g0 = 1.0;           // maximal coupling G_0
  double nu = 0.5;           // protocol speed
  double delta_bound = 1e-6; // pulse boundary value delta
  double tau_delay = -1.0;   // Gaussian delay; < 0 selects the default 1.2/nu
  StirapShape shape = StirapShape::vitanov;

  double tau() const { return tau_delay < 0 ? 1.2 / nu : tau_delay; }
  double t0() const;                    // Gaussian centre, G_s(0) = delta
  std::pair<double, double> window() const;
  void validate() const;
};

// mixing angle and derivatives (closed forms for both shapes)
double stirap_theta(const StirapParams& p, double t);
double stirap_theta_dot(const StirapParams& p, double t);
double stirap_theta_ddot(const StirapParams& p, double t);

// pulse amplitudes and gap
double stirap_gp(const StirapParams& p, double t);
double stirap_gs(const StirapParams& p, double t);
double stirap_gap(const StirapParams& p, double t); // G_0 (vitanov) or G(t)

// adiabatic-frame problem builders (computational subspace = dark state, Q = 1)
LeakageProblem build_constant_gap(const StirapParams& p);
LeakageProblem build_gaussian(const StirapParams& p);

// lab-frame Hamiltonian and the adiabatic change of basis S(t)
Mat stirap_lab_h(const StirapParams& p, double t);
TimeDepOperator stirap_frame_s(const StirapParams& p);

// exact shortcut correction (constant gap), adiabatic frame
Mat satd_reference(const StirapParams& p, double t);

// analytic Magnus corrections for the constant-gap shape, adiabatic frame
Mat stirap_w1_ad(const StirapParams& p, double t);
Mat stirap_w2_ad(const StirapParams& p, double t);
Mat stirap_w2_opt_ad(const StirapParams& p, double t); // prefactor 1/3

// implementability mask in the lab frame (no |1><3| coupling, no diagonal)
Eigen::MatrixXi stirap_lab_mask();

// frame moves for additive control terms
Mat stirap_ad_to_lab(const StirapParams& p, const Mat& w_ad, double t);
Mat stirap_lab_to_ad(const StirapParams& p, const Mat& w_lab, double t);

// Gaussian-shape machinery: precomputes Delta(t) = \int_0^t G and the oscillatory
// integrals entering the generating-function correction and its optimization
class GaussianStirap {
 public:
  explicit GaussianStirap(const StirapParams& p);

  const StirapParams& params() const { return p_; }
  double delta_phase(double t) const;     // Delta(t)
  cxd xi(double t) const;                 // \int_0^t e^{i Delta} theta_dot
  cxd i2(double t) const;                 // \int_0^t e^{i Delta} G theta_dot / G_0
  cxd gamma_integral(double alpha, double t) const { return alpha * i2(t) - xi(t); }
  double gamma(double alpha, double t) const; // (alpha G/G_0 - 1) theta_dot

  TimeDepOperator r_generating(double alpha) const;  // Omega_1 target profile
  TimeDepOperator w1_ctrl(double alpha) const;       // attainable part
  TimeDepOperator w1_err(double alpha) const;        // forbidden remainder
  TimeDepOperator w2(double alpha) const;            // second-order correction

  double fbar_closed(double alpha) const; // 1/4 + 1/12 [1 + 2 cos|.|]^2
  double approx_infidelity() const;       // |xi(tf)|^2
  double optimal_alpha() const;           // maximizer of fbar_closed on [0, 2]

 private:
  StirapParams p_;
  DenseSolution integrals_; // state (Delta, xi, i2)
};

// maps an adiabatic-frame corrected Hamiltonian back to complex lab pulses;
// throws if a forbidden |1><3| coupling or diagonal term above tol is required
struct LabPulses {
  std::function<cxd(double)> gp;
  std::function<cxd(double)> gs;
};
LabPulses corrected_lab_pulses(const StirapParams& p, const TimeDepOperator& w_ad_total,
                               double tol = 1e-8);

} // namespace mqc
