#include "mqc/fidelity.hpp"

#include <cmath>

namespace mqc {

double state_fidelity(const Mat& u_final, int initial, int target) {
  const int n = static_cast<int>(u_final.rows());
  if (initial < 0 || initial >= n || target < 0 || target >= n)
    throw std::out_of_range("state_fidelity: index out of range");
  return std::norm(u_final(target, initial));
}

double avg_fidelity(const Mat& u_err_final, const HilbertPartition& p, FBarConvention conv) {
  if (conv == FBarConvention::full_trace) {
    const double n = p.n_total;
    return (n + std::norm(u_err_final.trace())) / (n * (n + 1.0));
  }
  double acc = 0.0;
  for (int i = 0; i < p.n_comp; ++i) acc += std::norm(u_err_final(i, i));
  return acc / p.n_comp;
}

ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw std::invalid_argument("scaling_exponent: need >= 4 samples");
  ScalingFit fit;
  fit.samples = samples;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(samples.size());
  double xmin = 1e300, xmax = -1e300;
  for (auto [eps, err] : samples) {
    if (eps <= 0 || err <= 0)
      throw std::invalid_argument("scaling_exponent: non-positive sample");
    const double x = std::log(eps), y = std::log(err);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    xmin = std::min(xmin, eps); xmax = std::max(xmax, eps);
  }
  const double denom = n * sxx - sx * sx;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / n;
  const double sst = syy - sy * sy / n;
  double sse = 0;
  for (auto [eps, err] : samples) {
    const double r = std::log(err) - (fit.intercept + fit.exponent * std::log(eps));
    sse += r * r;
  }
  fit.r_squared = (sst > 0) ? 1.0 - sse / sst : 1.0;
  fit.conclusive = samples.size() >= 4 && xmax / xmin >= 10.0 && fit.r_squared >= 0.98;
  return fit;
}

} // namespace mqc
