#include <doctest.h>

#include "mqc/fidelity.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using namespace mqc;

TEST_CASE("state_fidelity basics") {
  Mat perm = Mat::Zero(3, 3);
  perm(2, 0) = 1.0;
  perm(0, 2) = 1.0;
  perm(1, 1) = 1.0;
  CHECK(state_fidelity(perm, 0, 2) == doctest::Approx(1.0));
  CHECK(state_fidelity(Mat::Identity(3, 3), 0, 2) == doctest::Approx(0.0));
  CHECK_THROWS(state_fidelity(perm, 0, 5));

  // completeness: sum over targets = 1 for unitary input
  Mat u(2, 2);
  const double th = 0.7;
  u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  double s = state_fidelity(u, 0, 0) + state_fidelity(u, 0, 1);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("avg_fidelity trivial cases and phase invariance") {
  HilbertPartition p(3, 2);
  CHECK(avg_fidelity(Mat::Identity(3, 3), p) == doctest::Approx(1.0));

  // global phase on the computational block, computational convention
  Mat u = Mat::Identity(3, 3);
  const cxd ph = std::exp(cxd(0, 0.4));
  u(0, 0) = ph;
  u(1, 1) = ph;
  u(2, 2) = std::exp(cxd(0, -1.3));
  CHECK(avg_fidelity(u, p, FBarConvention::computational) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("avg_fidelity matches Monte-Carlo state average") {
  // small random anti-Hermitian generator on the full space
  std::mt19937 rng(11);
  std::normal_distribution<double> d;
  const int n = 3, q = 3; // computational = full space so both conventions apply cleanly
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cxd(d(rng), d(rng));
  Mat gen = 0.05 * (a - a.adjoint()).eval();
  Mat uerr = gen.exp();

  HilbertPartition p(n, q);
  double fbar = avg_fidelity(uerr, p, FBarConvention::full_trace);

  // Monte-Carlo over Haar-random computational states
  double acc = 0.0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    Vec psi(n);
    for (int i = 0; i < n; ++i) psi(i) = cxd(d(rng), d(rng));
    psi.normalize();
    acc += std::norm((psi.adjoint() * uerr * psi)(0, 0));
  }
  CHECK(std::abs((1.0 - fbar) - (1.0 - acc / reps)) < 1e-3);
}

TEST_CASE("scaling_exponent") {
  std::vector<std::pair<double, double>> cubic;
  for (double e : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1})
    cubic.push_back({e, 7.0 * e * e * e});
  auto fit = scaling_exponent(cubic);
  CHECK(fit.exponent == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.conclusive);

  std::vector<std::pair<double, double>> flat;
  for (double e : {1e-3, 1e-2, 1e-1, 1.0})
    flat.push_back({e, 0.42});
  CHECK(scaling_exponent(flat).exponent == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS(scaling_exponent({{1e-3, 1e-3}, {1e-2, 1e-2}}));
  CHECK_THROWS(scaling_exponent({{1e-3, -1.0}, {1e-2, 1.0}, {1e-1, 1.0}, {1.0, 1.0}}));
}
