#include "mqc/core.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace mqc {

HilbertPartition::HilbertPartition(int n, int q, std::vector<std::string> labels)
    : n_total(n), n_comp(q), basis_labels(std::move(labels)) {
  if (n < 1 || q < 1 || q > n)
    throw std::invalid_argument(fmt::format("invalid partition: N={}, Q={}", n, q));
  if (basis_labels.empty())
    for (int i = 0; i < n; ++i) basis_labels.push_back(fmt::format("|{}>", i));
  if (static_cast<int>(basis_labels.size()) != n)
    throw std::invalid_argument("basis_labels size mismatch");
  for (size_t i = 0; i < basis_labels.size(); ++i)
    for (size_t j = i + 1; j < basis_labels.size(); ++j)
      if (basis_labels[i] == basis_labels[j])
        throw std::invalid_argument("duplicate basis label: " + basis_labels[i]);
}

Mat HilbertPartition::p_comp() const {
  Mat p = Mat::Zero(n_total, n_total);
  for (int i = 0; i < n_comp; ++i) p(i, i) = 1.0;
  return p;
}

Mat HilbertPartition::p_leak() const {
  return Mat::Identity(n_total, n_total) - p_comp();
}

double hermiticity_defect(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& m) {
  return (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double antihermiticity_defect(const Mat& m) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix::OperatorMatrix(Mat entries, OpRole r) : m(std::move(entries)), role(r) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
  switch (role) {
    case OpRole::hamiltonian:
      if (double d = hermiticity_defect(m); d > kHermTol)
        throw std::invalid_argument(fmt::format("hamiltonian not Hermitian (defect {:g})", d));
      break;
    case OpRole::unitary:
      if (double d = unitarity_defect(m); d > kUnitTol)
        throw std::invalid_argument(fmt::format("matrix not unitary (defect {:g})", d));
      break;
    case OpRole::magnus:
      if (double d = antihermiticity_defect(m); d > kMagnusTol)
        throw std::invalid_argument(fmt::format("Magnus term not anti-Hermitian (defect {:g})", d));
      break;
    case OpRole::generic:
      break;
  }
}

Mat TimeDepOperator::deriv(double t) const {
  if (deriv_fn) return deriv_fn(t);
  const double h = (tf - ti) * 1e-6;
  // one-sided near the window edges so the stencil stays inside [ti, tf]
  const double a = std::max(t - h, ti), b = std::min(t + h, tf);
  return (eval(b) - eval(a)) / (b - a);
}

void LeakageProblem::validate(int n_time_samples) const {
  const Mat pl = partition.p_leak();
  const Mat pc = partition.p_comp();
  for (int k = 0; k < n_time_samples; ++k) {
    const double t = ti + (tf - ti) * (k + 0.5) / n_time_samples;
    const Mat h = h0(t);
    if (double d = (pc * h * pl).cwiseAbs().maxCoeff() + (pl * h * pc).cwiseAbs().maxCoeff();
        d > 1e-10)
      throw std::invalid_argument(
          fmt::format("h0 couples computational and leakage blocks at t={} (|.|={:g})", t, d));
    if (double d = hermiticity_defect(v(t)); d > kHermTol * 1e2)
      throw std::invalid_argument(fmt::format("v not Hermitian at t={} (defect {:g})", t, d));
  }
}

Mat q_superop(const Mat& op, const HilbertPartition& p) {
  if (op.rows() != p.n_total)
    throw std::invalid_argument("q_superop: dimension mismatch");
  const Mat pl = p.p_leak();
  return op - pl * op * pl;
}

Mat block_project(const Mat& op, const HilbertPartition& p, Block which) {
  if (op.rows() != p.n_total)
    throw std::invalid_argument("block_project: dimension mismatch");
  const Mat proj = (which == Block::comp) ? p.p_comp() : p.p_leak();
  return proj * op * proj;
}

TimeDepOperator adiabatic_frame(const TimeDepOperator& h, const TimeDepOperator& s) {
  // sanity: s unitary at a few probe times
  for (int k = 0; k < 5; ++k) {
    const double t = s.ti + (s.tf - s.ti) * (k + 0.5) / 5;
    if (unitarity_defect(s(t)) > kUnitTol * 1e2)
      throw std::invalid_argument("adiabatic_frame: s(t) not unitary");
  }
  const cxd im(0.0, 1.0);
  auto f = [h, s, im](double t) -> Mat {
    const Mat st = s(t);
    return st.adjoint() * h(t) * st - im * st.adjoint() * s.deriv(t);
  };
  return TimeDepOperator(h.ti, h.tf, f);
}

} // namespace mqc
