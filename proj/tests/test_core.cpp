#include <doctest.h>

#include "mqc/core.hpp"

#include <random>

using namespace mqc;

namespace {

Mat random_hermitian(int n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cxd(d(rng), d(rng));
  return (a + a.adjoint()).eval() / 2.0;
}

} // namespace

TEST_CASE("partition validation") {
  CHECK_NOTHROW(HilbertPartition(4, 2));
  CHECK_THROWS(HilbertPartition(4, 0));
  CHECK_THROWS(HilbertPartition(2, 3));
  CHECK_THROWS(HilbertPartition(2, 2, {"a", "a"}));
}

TEST_CASE("operator role invariants checked on construction") {
  Mat h = Mat::Zero(2, 2);
  h(0, 1) = cxd(1, 2);
  h(1, 0) = cxd(1, -2);
  CHECK_NOTHROW(OperatorMatrix(h, OpRole::hamiltonian));
  h(1, 0) = cxd(1, 2);
  CHECK_THROWS(OperatorMatrix(h, OpRole::hamiltonian));
  CHECK_NOTHROW(OperatorMatrix(Mat::Identity(3, 3), OpRole::unitary));
  CHECK_THROWS(OperatorMatrix(2.0 * Mat::Identity(3, 3), OpRole::unitary));
  Mat am = Mat::Zero(2, 2);
  am(0, 1) = cxd(0, 1);
  am(1, 0) = cxd(0, 1);
  CHECK_NOTHROW(OperatorMatrix(am, OpRole::magnus));
  CHECK_THROWS(OperatorMatrix(Mat::Identity(2, 2), OpRole::magnus));
}

TEST_CASE("q_superop nulls the leakage-only block") {
  HilbertPartition p(4, 2);
  Mat d = Vec::LinSpaced(4, 1.0, 4.0).asDiagonal();
  Mat q = q_superop(d, p);
  CHECK(q(0, 0) == cxd(1));
  CHECK(q(1, 1) == cxd(2));
  CHECK(std::abs(q(2, 2)) == 0.0);
  CHECK(std::abs(q(3, 3)) == 0.0);

  // comp-leak coupling untouched
  Mat c = Mat::Zero(4, 4);
  c(1, 2) = 1.0;
  CHECK((q_superop(c, p) - c).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS(q_superop(Mat::Identity(3, 3), p));
}

TEST_CASE("q_superop is an idempotent projector on operator space") {
  std::mt19937 rng(7);
  for (int n : {3, 4, 6}) {
    HilbertPartition p(n, 2);
    for (int rep = 0; rep < 100; ++rep) {
      Mat m = random_hermitian(n, rng);
      Mat q1 = q_superop(m, p);
      Mat q2 = q_superop(q1, p);
      CHECK((q2 - q1).cwiseAbs().maxCoeff() < 1e-14);
      // exact decomposition Q(M) + P_leak M P_leak = M
      Mat rest = p.p_leak() * m * p.p_leak();
      CHECK((q1 + rest - m).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("block_project") {
  HilbertPartition p(3, 2);
  Mat pc = block_project(Mat::Identity(3, 3), p, Block::comp);
  CHECK(pc(0, 0) == cxd(1));
  CHECK(pc(1, 1) == cxd(1));
  CHECK(std::abs(pc(2, 2)) == 0.0);

  Mat c = Mat::Zero(3, 3);
  c(0, 2) = 1.0;
  CHECK(block_project(c, p, Block::comp).cwiseAbs().maxCoeff() == 0.0);

  // comp + leak + off-diagonal parts reassemble M
  std::mt19937 rng(3);
  Mat m = random_hermitian(3, rng);
  Mat off = q_superop(m, p) - block_project(m, p, Block::comp);
  Mat sum = block_project(m, p, Block::comp) + block_project(m, p, Block::leak) + off;
  CHECK((sum - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("finite-difference derivative fallback is O(h^2)") {
  TimeDepOperator op(0.0, 1.0, [](double t) {
    Mat m(2, 2);
    m << std::sin(t), 0, 0, std::cos(2 * t);
    return m;
  });
  CHECK(!op.has_analytic_deriv());
  Mat d = op.deriv(0.3);
  CHECK(std::abs(d(0, 0).real() - std::cos(0.3)) < 1e-9);
  CHECK(std::abs(d(1, 1).real() + 2 * std::sin(0.6)) < 1e-9);
}

TEST_CASE("adiabatic_frame") {
  auto h = TimeDepOperator(0.0, 1.0, [](double t) {
    Mat m(2, 2);
    m << 1.0, t, t, -1.0;
    return m;
  });

  SUBCASE("identity frame returns h unchanged") {
    auto s = TimeDepOperator(0.0, 1.0, [](double) { return Mat(Mat::Identity(2, 2)); },
                             [](double) { return Mat(Mat::Zero(2, 2)); });
    auto ha = adiabatic_frame(h, s);
    CHECK((ha(0.4) - h(0.4)).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("constant frame conjugates without derivative term") {
    Mat u(2, 2);
    const double th = 0.3;
    u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    auto s = TimeDepOperator(0.0, 1.0, [u](double) { return u; },
                             [](double) { return Mat(Mat::Zero(2, 2)); });
    auto ha = adiabatic_frame(h, s);
    CHECK((ha(0.7) - u.adjoint() * h(0.7) * u).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("hermitian output for rotating frame") {
    auto s = TimeDepOperator(0.0, 1.0,
                             [](double t) {
                               Mat u(2, 2);
                               u << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
                               return u;
                             });
    auto ha = adiabatic_frame(h, s);
    for (double t : {0.1, 0.5, 0.9})
      CHECK(hermiticity_defect(ha(t)) < 1e-9);
  }

  SUBCASE("non-unitary frame rejected") {
    auto s = TimeDepOperator(0.0, 1.0, [](double) { return Mat(2.0 * Mat::Identity(2, 2)); });
    CHECK_THROWS(adiabatic_frame(h, s));
  }
}
