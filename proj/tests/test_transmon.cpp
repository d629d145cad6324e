#include <doctest.h>

#include "mqc/fidelity.hpp"
#include "mqc/model_transmon.hpp"
#include "mqc/propagator.hpp"

#include <cmath>

using namespace mqc;

namespace {

TimeDepOperator full_h(const TransmonParams& p, std::function<Mat(double)> w = nullptr) {
  auto prob = build_transmon(p);
  return TimeDepOperator(prob.ti, prob.tf, [prob, w](double t) -> Mat {
    Mat h = prob.h0(t) + prob.epsilon * prob.v(t);
    if (w) h += w(t);
    return h;
  });
}

double gate_infidelity(const TransmonParams& p, std::function<Mat(double)> w = nullptr) {
  auto [ti, tf] = p.window();
  auto u = propagate(full_h(p, std::move(w)), ti, tf, 1e-10);
  const Mat u_err = u0_closed_form(p, tf).adjoint() * u->u(tf);
  return 1.0 - avg_fidelity(u_err, HilbertPartition(3, 2), FBarConvention::computational);
}

// relative sup distance between a pipeline correction and its printed form.
// the exact construction carries a gap-frequency oscillatory factor (with the
// same amplitude as the envelope); the printed forms are the slowly varying
// envelopes, so average the pipeline output first. a triangular window over
// two gap periods also kills the first moment of the envelope drift
double rel_err_avg(const TimeDepOperator& got, const std::function<Mat(double)>& want,
                   const std::vector<double>& probes, double period) {
  double num = 0.0, den = 0.0;
  const int n = 64;
  for (double t : probes) {
    Mat acc = Mat::Zero(3, 3);
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = 2.0 * period * ((k + 0.5) / n - 0.5);
      const double wt = 1.0 - std::abs(x) / period;
      acc += wt * got(t + x);
      wsum += wt;
    }
    const Mat avg = acc / wsum;
    num = std::max(num, (avg - want(t)).cwiseAbs().maxCoeff());
    den = std::max(den, want(t).cwiseAbs().maxCoeff());
  }
  return num / den;
}

} // namespace

TEST_CASE("pulse, window, and rotation-angle defaults") {
  TransmonParams p;
  auto [ti, tf] = p.window();
  CHECK(ti == doctest::Approx(-3.0));
  CHECK(tf == doctest::Approx(3.0));
  CHECK(p.width() == doctest::Approx(std::sqrt(M_PI) / 4.0));
  CHECK_NOTHROW(p.validate());
  // total pulse area pi/4: the free evolution enacts the target gate
  CHECK(transmon_phi(p, tf) == doctest::Approx(M_PI / 4).epsilon(1e-12));
  const Mat u = u0_closed_form(p, tf);
  CHECK((u.topLeftCorner(2, 2) - transmon_hadamard()).cwiseAbs().maxCoeff() < 1e-12);

  TransmonParams bad;
  bad.tf = 0.1; // pulse not off at the edge
  CHECK_THROWS(bad.validate());
}

TEST_CASE("closed-form free propagator agrees with direct integration") {
  TransmonParams p;
  auto prob = build_transmon(p);
  auto u0 = propagate(prob.h0, prob.ti, prob.tf, 1e-11);
  for (double t : {-2.0, -0.5, 0.8, 3.0})
    CHECK((u0->u(t) - u0_closed_form(p, t)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("printed first-order correction is the large-gap limit of the pipeline") {
  const std::vector<double> probes{-1.6, -0.7, 0.9, 1.4};
  // compare on the directly drivable elements: on the |0><2| element the exact
  // construction is a pure zero-mean oscillation while the printed form keeps
  // a representative envelope (both cancel the same leakage integral), so that
  // element differs by convention at every gap
  auto drop_02 = [](Mat m) {
    m(0, 2) = m(2, 0) = 0.0;
    return m;
  };
  auto pipeline_err = [&](double delta) {
    TransmonParams p;
    p.anharmonicity = delta;
    auto prob = build_transmon(p);
    auto u0 = propagate(prob.h0, prob.ti, prob.tf, 1e-11);
    auto w1 = w1_derivative(prob, u0, 1e-6);
    TimeDepOperator w1m(prob.ti, prob.tf, [w1, drop_02](double t) { return drop_02(w1(t)); });
    return rel_err_avg(w1m, [p, drop_02](double t) { return drop_02(transmon_w1_ideal(p, t)); },
                       probes, 2.0 * M_PI / delta);
  };
  const double e200 = pipeline_err(200.0);
  CHECK(e200 < 1e-2);
  const double e100 = pipeline_err(100.0);
  CHECK(e200 < 0.5 * e100); // converges as the gap grows
}

TEST_CASE("printed second-order correction matches w2_standard asymptotically") {
  TransmonParams p;
  p.anharmonicity = 100.0;
  auto prob = build_transmon(p);
  auto u0 = propagate(prob.h0, prob.ti, prob.tf, 1e-11);
  TimeDepOperator w1(prob.ti, prob.tf, [p](double t) { return transmon_w1_ideal(p, t); });
  auto w2 = w2_standard(prob, u0, w1, 1e-10);
  // the pipeline only produces the leakage-suppressing part of W2, so compare
  // both sides through the q projection (the printed envelope also carries a
  // leakage-diagonal phase that the construction excludes by design)
  const auto part = prob.partition;
  TimeDepOperator w2q(prob.ti, prob.tf,
                      [w2, part](double t) { return q_superop(w2(t), part); });
  CHECK(rel_err_avg(w2q, [p, part](double t) { return q_superop(transmon_w2_ideal(p, t), part); },
                    {-1.6, -0.7, 0.9, 1.4}, 2.0 * M_PI / p.anharmonicity) < 0.1);
}

TEST_CASE("exponential closure of the unattainable remainder") {
  TransmonParams p;
  auto prob = build_transmon(p);
  auto u0 = propagate(prob.h0, prob.ti, prob.tf, 1e-11);
  auto split = split_controls(
      TimeDepOperator(prob.ti, prob.tf, [p](double t) { return transmon_w1_ideal(p, t); }),
      transmon_mask());
  // err lives on |0><2| only, proportional to kappa^2: d/dt err = g_e err
  for (double t : {-1.3, 0.4, 1.1}) {
    const Mat res = split.err.deriv(t) - transmon_g_e(p, t) * split.err(t);
    CHECK(res.cwiseAbs().maxCoeff() < 1e-6);
    CHECK(std::abs(split.err(t)(1, 2)) == 0.0);
    CHECK(std::abs(split.ctrl(t)(0, 2)) == 0.0);
  }
  CHECK_NOTHROW(iterative_ibp(prob, u0, split, [&](double t) { return transmon_g_e(p, t); },
                              [](double) { return 0.0; }, 1));
}

TEST_CASE("depth-2 integration by parts reproduces the constrained envelope") {
  TransmonParams p;
  p.anharmonicity = 100.0;
  auto prob = build_transmon(p);
  auto u0 = propagate(prob.h0, prob.ti, prob.tf, 1e-11);
  auto split = split_controls(
      TimeDepOperator(prob.ti, prob.tf, [p](double t) { return transmon_w1_ideal(p, t); }),
      transmon_mask());
  auto extra = iterative_ibp(prob, u0, split, [&](double t) { return transmon_g_e(p, t); },
                             [](double) { return 0.0; }, 2);
  double num = 0.0, den = 0.0;
  for (double t : {-1.6, -0.7, 0.9, 1.4}) {
    const cxd got = split.ctrl(t)(1, 2) + extra(t)(1, 2);
    const cxd want = transmon_w1_ctrl_b(p, t)(1, 2);
    num = std::max(num, std::abs(got - want));
    den = std::max(den, std::abs(want));
  }
  CHECK(num / den < 3e-2);
}

TEST_CASE("printed detuning corrections cancel the residual phase errors") {
  // with the constrained control alone the gate error is dominated by phase
  // errors; adding the printed diagonal envelopes removes them almost entirely
  TransmonParams p; // Delta / kappa0 = 20
  const double ctrl_only =
      gate_infidelity(p, [p](double t) { return transmon_w1_ctrl_c(p, t); });
  const double with_diag = gate_infidelity(p, [p](double t) {
    return Mat(transmon_w1_ctrl_c(p, t) + transmon_w1_diag(p, t) + transmon_w2_eff(p, t));
  });
  CHECK(ctrl_only > 1e-4);
  CHECK(with_diag < 1e-4 * ctrl_only);
}

TEST_CASE("quadrature synthesis equals the constrained correction off the diagonal") {
  TransmonParams p;
  auto prob = build_transmon(p);
  auto q = transmon_quadratures(p);
  for (double t : {-1.7, -0.4, 0.6, 2.1}) {
    const Mat h = transmon_h_from_quadratures(p, q.kx(t), q.ky(t), 0.0);
    const Mat want = prob.h0(t) + prob.epsilon * prob.v(t) + transmon_w1_ctrl_c(p, t);
    Mat diff = h - want;
    diff.diagonal().setZero();
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-13);
  }
  // detuning formula: leading coefficient (2 - lambda^2/2) kappa^2 / Delta
  TransmonParams pb = p;
  pb.anharmonicity = 1e5;
  auto qb = transmon_quadratures(pb);
  const double k2 = std::pow(transmon_kappa(pb, 0.5), 2);
  CHECK(qb.delta(0.5) * pb.anharmonicity / k2 ==
        doctest::Approx(2.0 - 0.5 * pb.lambda_rel * pb.lambda_rel).epsilon(1e-6));
}

TEST_CASE("corrections improve the gate at the benchmark operating point") {
  TransmonParams p; // Delta / kappa0 = 20
  const double bare = gate_infidelity(p);
  const double ideal = gate_infidelity(p, [p](double t) {
    return Mat(transmon_w1_ideal(p, t) + transmon_w2_ideal(p, t));
  });
  auto cset = constrained_corrections(p);
  const double constrained = gate_infidelity(p, [cset](double t) { return cset.total(t); });
  CHECK(bare > 1e-5);
  CHECK(ideal < 0.05 * bare);
  CHECK(constrained < 0.2 * bare);
}

TEST_CASE("baseline comparison pulses") {
  TransmonParams p;
  CHECK_THROWS(drag_baseline(p, std::nullopt));
  DragBaselineConfig c{0.5, 0.0, 0.0};
  auto s = drag_baseline(p, c);
  for (double t : {-1.1, 0.7}) {
    const Mat w = s.total(t);
    CHECK(w(0, 1) == cxd(0.0, 0.5 * transmon_kappa_dot(p, t) / p.anharmonicity));
    CHECK(std::abs(w(2, 2)) < 1e-14);
    CHECK(std::abs(w(0, 2)) < 1e-14);
  }
}
