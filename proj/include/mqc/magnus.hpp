#pragma once

// Magnus-series terms Omega_1..Omega_3 of an error propagator, the convergence
// certificate, and the reconstructed propagator exp(sum Omega_k)

#include "mqc/core.hpp"
#include "mqc/ode.hpp"

namespace mqc {

class MagnusTerms {
 public:
  MagnusTerms(DenseSolution sol, int dim, int order, double ti, double tf);

  Mat omega(int k, double t) const;       // k in {1,2,3}
  Mat omega_deriv(int k, double t) const; // d Omega_k / dt
  Mat omega_sum(double t) const;          // Omega_1 + ... + Omega_order
  int order() const { return order_; }
  double ti() const { return ti_; }
  double tf() const { return tf_; }

 private:
  DenseSolution sol_; // stacked vec(Omega_1..Omega_3)
  int dim_, order_;
  double ti_, tf_;
};

// co-integrates dOmega_1 = -i V_I, dOmega_2 = 1/2 [dOmega_1, Omega_1],
// dOmega_3 = 1/2 [dOmega_1, Omega_2] - 1/6 [Omega_1, dOmega_2] in one pass
MagnusTerms magnus_terms(const TimeDepOperator& v_int, double ti, double tf, int order,
                         double tol = 1e-10);

// \int ||V_I(t)||_2 dt (spectral norm); advisory, compare against pi
double convergence_certificate(const TimeDepOperator& v_int, double ti, double tf);

// exp(Omega_1 + ... + Omega_order)(t)
Mat error_propagator(const MagnusTerms& terms, double t);

// spectral norm helper (largest singular value)
double spectral_norm(const Mat& m);

} // namespace mqc
