#include <doctest.h>

#include "mqc/propagator.hpp"
#include "mqc/quad.hpp"

#include <algorithm>
#include <cmath>

using namespace mqc;

namespace {

const Mat sigma_x = [] {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}();

} // namespace

TEST_CASE("zero Hamiltonian propagates to identity") {
  TimeDepOperator h(0.0, 2.0, [](double) { return Mat(Mat::Zero(3, 3)); });
  auto r = propagate(h, 0.0, 2.0);
  CHECK((r->u(1.37) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((r->u(0.0) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constant sigma_x rotation") {
  const double eta = 0.7;
  const double tpi = M_PI / (2 * eta);
  TimeDepOperator h(0.0, tpi, [eta](double) { return Mat(eta * sigma_x); });
  auto r = propagate(h, 0.0, tpi);
  Mat expect = cxd(0, -1) * sigma_x;
  CHECK((r->u(tpi) - expect).cwiseAbs().maxCoeff() < 1e-9);
  // interior structure cos(eta t) 1 - i sin(eta t) sigma_x
  const double t = 0.4 * tpi;
  Mat u = std::cos(eta * t) * Mat::Identity(2, 2) - cxd(0, 1) * std::sin(eta * t) * sigma_x;
  CHECK((r->u(t) - u).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("unitarity defect bounded by 10 tol and improves with tol") {
  TimeDepOperator h(0.0, 10.0, [](double t) {
    Mat m(2, 2);
    m << std::cos(t), cxd(0.3, 0.2) * std::sin(2 * t), cxd(0.3, -0.2) * std::sin(2 * t), -1.0;
    return m;
  });
  double prev = 1.0;
  for (double tol : {1e-7, 1e-9, 1e-11}) {
    auto r = propagate(h, 0.0, 10.0, tol);
    double worst = 0.0;
    for (double t : r->grid()) worst = std::max(worst, unitarity_defect(r->u(t)));
    CHECK(worst <= 10 * tol);
    CHECK(worst <= prev * 2.0); // monotone improvement (with slack)
    prev = worst;
  }
}

TEST_CASE("forward-backward composition returns identity") {
  TimeDepOperator h(0.0, 3.0, [](double t) {
    Mat m(2, 2);
    m << t, std::sin(t), std::sin(t), -t;
    return m;
  });
  auto fwd = propagate(h, 0.0, 3.0, 1e-10);
  // reversed time: K(s) = -H(3 - s) propagated over [0,3] undoes fwd
  TimeDepOperator hb(0.0, 3.0, [&h](double s) { return Mat(-h(3.0 - s)); });
  auto bwd = propagate(hb, 0.0, 3.0, 1e-10);
  CHECK((bwd->u(3.0) * fwd->u(3.0) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("non-Hermitian input rejected") {
  TimeDepOperator h(0.0, 1.0, [](double) {
    Mat m(2, 2);
    m << 0, 1, 2, 0;
    return m;
  });
  CHECK_THROWS(propagate(h, 0.0, 1.0));
}

TEST_CASE("interaction picture") {
  TimeDepOperator h0(0.0, 4.0, [](double) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
  });
  auto u0 = propagate(h0, 0.0, 4.0);

  SUBCASE("identity propagation leaves op unchanged") {
    TimeDepOperator hz(0.0, 4.0, [](double) { return Mat(Mat::Zero(2, 2)); });
    auto uz = propagate(hz, 0.0, 4.0);
    TimeDepOperator op(0.0, 4.0, [](double t) { return Mat(t * sigma_x); });
    auto opi = interaction_picture(op, uz);
    CHECK((opi(2.3) - op(2.3)).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("diagonal frame gives analytic phases") {
    TimeDepOperator op(0.0, 4.0, [](double) { return sigma_x; });
    auto opi = interaction_picture(op, u0);
    // U0 = diag(e^{-it}, e^{it}); (U0^dag X U0)_{01} = e^{i 2 t}
    const double t = 1.1;
    CHECK(std::abs(opi(t)(0, 1) - std::exp(cxd(0, 2 * t))) < 1e-9);
  }

  SUBCASE("spectrum preserved under the transform") {
    TimeDepOperator op(0.0, 4.0, [](double t) {
      Mat m(2, 2);
      m << 0.4, cxd(0.2, 0.1) * t, cxd(0.2, -0.1) * t, -0.9;
      return m;
    });
    auto opi = interaction_picture(op, u0);
    for (double t : {0.5, 2.0, 3.7}) {
      Eigen::VectorXd e1 = Eigen::SelfAdjointEigenSolver<Mat>(op(t)).eigenvalues();
      Eigen::VectorXd e2 = Eigen::SelfAdjointEigenSolver<Mat>(opi(t)).eigenvalues();
      CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("l0_antiderivative") {
  TimeDepOperator h0(0.0, 2.0, [](double) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 0.9;
    m(1, 1) = -0.9;
    return m;
  });
  auto u0 = propagate(h0, 0.0, 2.0);

  SUBCASE("zero operator integrates to zero") {
    CHECK(l0_antiderivative(Mat::Zero(2, 2), *u0, 1.7).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("free evolution off H0=0 gives (t - ti) op") {
    TimeDepOperator hz(0.0, 2.0, [](double) { return Mat(Mat::Zero(2, 2)); });
    auto uz = propagate(hz, 0.0, 2.0);
    Mat r = l0_antiderivative(sigma_x, *uz, 1.5);
    CHECK((r - 1.5 * sigma_x).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("matches direct quadrature oracle") {
    Mat x(2, 2);
    x << 0.3, cxd(0.1, 0.7), cxd(0.1, -0.7), -0.2;
    Mat got = l0_antiderivative(x, *u0, 1.9);
    Mat want = quad([&](double t1) { return u0->l0_apply(x, t1); }, 0.0, 1.9);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-8);
  }
}
