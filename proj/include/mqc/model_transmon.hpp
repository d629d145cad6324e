#pragma once

// weakly anharmonic three-level qubit benchmark: rotating-frame Hamiltonian,
// analytic free propagator, ideal and experimentally constrained corrections.
// basis order (|0>, |1>, |2>), leakage level |2>.

#include "mqc/core.hpp"
#include "mqc/corrections.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace mqc {

struct TransmonParams {
  double kappa0 = 1.0;      // peak Rabi amplitude
  double t0 = -1.0;         // Gaussian width; < 0 selects sqrt(pi)/(4 kappa0)
  double anharmonicity = 20.0; // Delta
  double lambda_rel = std::sqrt(2.0); // lambda
  double detuning = 0.0;    // baseline drive detuning delta
  double ti = std::numeric_limits<double>::quiet_NaN(); // NaN selects -3/kappa0
  double tf = std::numeric_limits<double>::quiet_NaN(); // NaN selects +3/kappa0

  double width() const { return t0 < 0 ? std::sqrt(M_PI) / (4.0 * kappa0) : t0; }
  std::pair<double, double> window() const;
  void validate() const;
};

double transmon_kappa(const TransmonParams& p, double t);
double transmon_kappa_dot(const TransmonParams& p, double t);
double transmon_phi(const TransmonParams& p, double t); // \int_{ti}^t kappa

// target gate on the qubit block: (|0><0| - i|0><1| - i|1><0| + |1><1|)/sqrt(2)
Mat transmon_hadamard();

LeakageProblem build_transmon(const TransmonParams& p);

// closed-form free propagator, resonant drive only
Mat u0_closed_form(const TransmonParams& p, double t);

// ideal unconstrained corrections
Mat transmon_w1_ideal(const TransmonParams& p, double t);
Mat transmon_w2_ideal(const TransmonParams& p, double t);
CorrectionSet ideal_corrections(const TransmonParams& p);

// single-drive-line implementability mask: |1><2| channel only (the part of the
// ideal W_1 reachable without an independent |0><2| drive)
Eigen::MatrixXi transmon_mask();

// exponential closure of the unattainable remainder, d/dt W1err = g_e W1err
double transmon_g_e(const TransmonParams& p, double t); // 2 kappa_dot / kappa

// constrained corrections: W_1^eff = W_1^diag + W_1^{ctrl,C}, W_2^eff
Mat transmon_w1_ctrl_b(const TransmonParams& p, double t); // |1><2| channel only
Mat transmon_w1_ctrl_c(const TransmonParams& p, double t); // shared-drive form
Mat transmon_w1_diag(const TransmonParams& p, double t);
Mat transmon_w2_eff(const TransmonParams& p, double t);
CorrectionSet constrained_corrections(const TransmonParams& p);

// corrected pulse quadratures and detuning equivalent to the constrained set
struct TransmonQuadratures {
  std::function<double(double)> kx;    // Re kappa_tilde
  std::function<double(double)> ky;    // Im kappa_tilde
  std::function<double(double)> delta; // drive detuning
};
TransmonQuadratures transmon_quadratures(const TransmonParams& p);

// comparison baseline supplied externally: ky = cy kappa_dot / Delta,
// delta = cd kappa^2 / Delta, kx = kappa + cx kappa^3 / Delta^2
struct DragBaselineConfig {
  double cy = 0.0;
  double cd = 0.0;
  double cx = 0.0;
};
CorrectionSet drag_baseline(const TransmonParams& p,
                            const std::optional<DragBaselineConfig>& cfg);

// Hamiltonian assembled from quadratures and detuning (for propagation checks)
Mat transmon_h_from_quadratures(const TransmonParams& p, double kx, double ky,
                                double delta);

} // namespace mqc
