#pragma once

// multiple-crossings Landau-Zener benchmark: four-level builder, TD/SATD
// shortcut references on the qubit block, superadiabatic frame, closed-form
// frame-transformed coupling elements, and the generating-function correction.
// basis order (|0>, |1>, |2>, |3>), qubit = (|0>, |1>).

#include "mqc/core.hpp"
#include "mqc/corrections.hpp"

namespace mqc {

struct MlzParams {
  double eta = 0.5;    // qubit diabatic coupling
  double eta12 = -1.0; // spurious couplings; < 0 selects eta
  double eta03 = -1.0;
  double eta23 = -1.0;
  double omega2 = 0.1; // diabatic offsets of the leakage levels
  double omega3 = 0.1;
  double tau_i = -20.0;
  double tau_f = 20.0;

  double e12() const { return eta12 < 0 ? eta : eta12; }
  double e03() const { return eta03 < 0 ? eta : eta03; }
  double e23() const { return eta23 < 0 ? eta : eta23; }
  bool equal_couplings() const;
  void validate() const;
};

// lab-frame pieces: qubit sweep + leakage sweep (block-diagonal) and the
// constant spurious coupling V
Mat mlz_h0_lab(const MlzParams& p, double tau);
Mat mlz_v_lab(const MlzParams& p);
LeakageProblem build_mlz(const MlzParams& p);

// two-level shortcut references embedded in the four-level space (qubit block)
Mat td_reference(const MlzParams& p, double tau);
Mat satd_reference(const MlzParams& p, double tau);

// adiabatic and superadiabatic changes of basis for the qubit block.
// s acts non-trivially only on the qubit block; h_sad = s^dag H s - i s^dag ds
// for H = H_mc + W_SATD. gauge: each eigenvector column is scaled so that its
// dominant (same-index) component is real positive, which keeps overlaps of
// neighbouring times positive.
struct SadFrame {
  TimeDepOperator s;
  TimeDepOperator h_sad;
};
SadFrame superadiabatic_frame(const MlzParams& p);

// direct frame transform of the coupling operator, s^dag V s (primary path)
Mat v_sad_direct(const MlzParams& p, double tau);
// closed-form matrix elements, valid for equal couplings only (verification
// surface); falls back to the direct construction otherwise
Mat v_sad_elements(const MlzParams& p, double tau);

// the part of V_SAD kept by the generating-function ansatz: Re of the |1>-row
// couplings, i Im of the |0>-row couplings
Mat mlz_v_part(const MlzParams& p, double tau);

// superadiabatic-frame leakage problem: h0 = diagonal part of h_sad, v = rest
LeakageProblem build_mlz_sad(const MlzParams& p);

// W_1 from the generating-function approach with r = -i Q l0 V_part, plus W_2
// from the standard second-order construction; returned in the superadiabatic
// frame together with the propagator used to build them
struct MlzCorrections {
  CorrectionSet set;                      // W_1, W_2 in the SAD frame
  std::shared_ptr<PropagationResult> u0;  // free propagator of h0_sad
  LeakageProblem problem;                 // the SAD-frame problem
};
MlzCorrections mlz_generating_correction(const MlzParams& p, double tol = 1e-10);

// pulls a SAD-frame control term back to the lab frame: s W s^dag
Mat mlz_sad_to_lab(const SadFrame& f, const Mat& w_sad, double tau);

} // namespace mqc
