#include "mqc/runner.hpp"

#include "mqc/fidelity.hpp"
#include "mqc/magnus.hpp"
#include "mqc/model_mlz.hpp"
#include "mqc/model_stirap.hpp"
#include "mqc/propagator.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace mqc {

// ---------------------------------------------------------------------------
// enums and config

std::string to_string(Model m) {
  switch (m) {
    case Model::stirap_const: return "stirap_const";
    case Model::stirap_gauss: return "stirap_gauss";
    case Model::transmon: return "transmon";
    case Model::mlz: return "mlz";
  }
  return "?";
}

std::string to_string(RunStrategy s) {
  switch (s) {
    case RunStrategy::none: return "none";
    case RunStrategy::w1: return "w1";
    case RunStrategy::w1w2: return "w1w2";
    case RunStrategy::w2_optimal: return "w2_optimal";
    case RunStrategy::satd: return "satd";
    case RunStrategy::td: return "td";
    case RunStrategy::drag_baseline: return "drag_baseline";
    case RunStrategy::constrained_magnus: return "constrained_magnus";
    case RunStrategy::ideal_magnus: return "ideal_magnus";
  }
  return "?";
}

Model model_from_string(const std::string& s) {
  for (auto m : {Model::stirap_const, Model::stirap_gauss, Model::transmon, Model::mlz})
    if (to_string(m) == s) return m;
  throw std::invalid_argument(fmt::format("unknown model '{}'", s));
}

RunStrategy strategy_from_string(const std::string& s) {
  for (auto st : {RunStrategy::none, RunStrategy::w1, RunStrategy::w1w2,
                  RunStrategy::w2_optimal, RunStrategy::satd, RunStrategy::td,
                  RunStrategy::drag_baseline, RunStrategy::constrained_magnus,
                  RunStrategy::ideal_magnus})
    if (to_string(st) == s) return st;
  throw std::invalid_argument(fmt::format("unknown strategy '{}'", s));
}

bool strategy_valid_for(Model m, RunStrategy s) {
  using RS = RunStrategy;
  switch (m) {
    case Model::stirap_const:
      return s == RS::none || s == RS::w1 || s == RS::w1w2 || s == RS::w2_optimal ||
             s == RS::satd;
    case Model::stirap_gauss:
      return s == RS::none || s == RS::w1 || s == RS::w1w2;
    case Model::transmon:
      return s == RS::none || s == RS::ideal_magnus || s == RS::constrained_magnus ||
             s == RS::drag_baseline;
    case Model::mlz:
      return s == RS::none || s == RS::td || s == RS::satd || s == RS::w1 || s == RS::w1w2;
  }
  return false;
}

void RunConfig::validate() const {
  if (strategies.empty()) throw std::invalid_argument("no strategies configured");
  for (auto s : strategies)
    if (!strategy_valid_for(model, s))
      throw std::invalid_argument(fmt::format("strategy '{}' is not valid for model '{}'",
                                              to_string(s), to_string(model)));
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("sweep grid must be strictly increasing");
  if (sweep_param.empty()) throw std::invalid_argument("sweep parameter not named");
  if (tol <= 0 || tol > 1e-2) throw std::invalid_argument("tolerance out of range");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  // forms: "a:b:n" linear, "log:a:b:n", or a whitespace-separated list
  std::vector<double> g;
  if (spec.find(':') != std::string::npos) {
    auto parts = split_list(spec, ':');
    bool logspace = !parts.empty() && parts.front() == "log";
    if (logspace) parts.erase(parts.begin());
    if (parts.size() != 3) throw std::invalid_argument("grid spec must be [log:]start:stop:count");
    const double a = std::stod(parts[0]), b = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1 || (n == 1 && a != b)) throw std::invalid_argument("bad grid count");
    for (int i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      g.push_back(logspace ? a * std::pow(b / a, f) : a + (b - a) * f);
    }
  } else {
    std::istringstream is(spec);
    double v;
    while (is >> v) g.push_back(v);
  }
  return g;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;
  cfg.strategies.clear();
  std::string section = "run";
  bool have_drag = false;
  DragBaselineConfig drag;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(fmt::format("line {}: bad section", lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "model" && section != "drag_baseline")
        throw std::invalid_argument(fmt::format("line {}: unknown section [{}]", lineno, section));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(fmt::format("line {}: expected key = value", lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (section == "run") {
        if (key == "model") cfg.model = model_from_string(val);
        else if (key == "strategies" || key == "strategy")
          for (const auto& s : split_list(val, ',')) cfg.strategies.push_back(strategy_from_string(s));
        else if (key == "sweep") cfg.sweep_param = val;
        else if (key == "grid") cfg.grid = parse_grid(val);
        else if (key == "pulse_points") cfg.pulse_points = parse_grid(val);
        else if (key == "tol") cfg.tol = std::stod(val);
        else if (key == "seed") cfg.seed = static_cast<unsigned>(std::stoul(val));
        else throw std::invalid_argument(fmt::format("unknown key '{}' in [run]", key));
      } else if (section == "model") {
        cfg.model_params[key] = std::stod(val);
      } else { // drag_baseline
        have_drag = true;
        if (key == "cy") drag.cy = std::stod(val);
        else if (key == "cd") drag.cd = std::stod(val);
        else if (key == "cx") drag.cx = std::stod(val);
        else throw std::invalid_argument(fmt::format("unknown key '{}' in [drag_baseline]", key));
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  if (have_drag) cfg.drag = drag;
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument(fmt::format("cannot open config '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// model assembly

namespace {

double get_param(const RunConfig& cfg, const std::string& key, double dflt) {
  auto it = cfg.model_params.find(key);
  return it == cfg.model_params.end() ? dflt : it->second;
}

StirapParams stirap_params(const RunConfig& cfg, double nu, StirapShape shape) {
  StirapParams p;
  p.shape = shape;
  p.nu = nu;
  p.g0 = get_param(cfg, "g0", 1.0);
  p.delta_bound = get_param(cfg, "delta_bound", 1e-6);
  p.tau_delay = get_param(cfg, "tau_delay", -1.0);
  return p;
}

TransmonParams transmon_params(const RunConfig& cfg, double kappa0_over_delta) {
  TransmonParams p;
  p.kappa0 = get_param(cfg, "kappa0", 1.0);
  p.anharmonicity = p.kappa0 / kappa0_over_delta;
  p.lambda_rel = get_param(cfg, "lambda_rel", std::sqrt(2.0));
  return p;
}

MlzParams mlz_params(const RunConfig& cfg, double eta) {
  MlzParams p;
  p.eta = eta;
  p.eta12 = get_param(cfg, "eta12", -1.0);
  p.eta03 = get_param(cfg, "eta03", -1.0);
  p.eta23 = get_param(cfg, "eta23", -1.0);
  p.omega2 = get_param(cfg, "omega2", 0.1);
  p.omega3 = get_param(cfg, "omega3", 0.1);
  p.tau_i = get_param(cfg, "tau_i", -20.0);
  p.tau_f = get_param(cfg, "tau_f", 20.0);
  return p;
}

double transfer_infidelity(const TimeDepOperator& h, double ti, double tf, int init,
                           int target, double tol) {
  auto u = propagate(h, ti, tf, tol);
  return 1.0 - state_fidelity(u->u(tf), init, target);
}

// adiabatic-frame STIRAP Hamiltonian plus an additive correction
TimeDepOperator stirap_h_total(const StirapParams& p,
                               const std::function<Mat(double)>& w) {
  auto [ti, tf] = p.window();
  return TimeDepOperator(ti, tf, [p, w](double t) -> Mat {
    Mat h = Mat::Zero(3, 3);
    const double g = stirap_gap(p, t);
    h(1, 1) = g;
    h(2, 2) = -g;
    Mat v = Mat::Zero(3, 3);
    v(0, 1) = cxd(0, 1);
    v(0, 2) = cxd(0, 1);
    v += v.adjoint().eval();
    h += stirap_theta_dot(p, t) / std::sqrt(2.0) * v;
    if (w) h += w(t);
    return h;
  });
}

std::function<Mat(double)> stirap_correction(const StirapParams& p, RunStrategy s) {
  switch (s) {
    case RunStrategy::none: return nullptr;
    case RunStrategy::w1: return [p](double t) { return stirap_w1_ad(p, t); };
    case RunStrategy::w1w2:
      return [p](double t) { return Mat(stirap_w1_ad(p, t) + stirap_w2_ad(p, t)); };
    case RunStrategy::w2_optimal:
      return [p](double t) { return Mat(stirap_w1_ad(p, t) + stirap_w2_opt_ad(p, t)); };
    case RunStrategy::satd: return [p](double t) { return satd_reference(p, t); };
    default: throw std::invalid_argument("strategy not valid for stirap_const");
  }
}

std::function<Mat(double)> gauss_correction(const GaussianStirap& gs, RunStrategy s) {
  if (s == RunStrategy::none) return nullptr;
  const double alpha = gs.optimal_alpha();
  auto w1 = gs.w1_ctrl(alpha);
  if (s == RunStrategy::w1) return [w1](double t) { return w1(t); };
  auto w2 = gs.w2(alpha);
  if (s == RunStrategy::w1w2)
    return [w1, w2](double t) { return Mat(w1(t) + w2(t)); };
  throw std::invalid_argument("strategy not valid for stirap_gauss");
}

std::function<Mat(double)> transmon_correction(const RunConfig& cfg,
                                               const TransmonParams& p, RunStrategy s) {
  switch (s) {
    case RunStrategy::none: return nullptr;
    case RunStrategy::ideal_magnus:
      return [p](double t) { return Mat(transmon_w1_ideal(p, t) + transmon_w2_ideal(p, t)); };
    case RunStrategy::constrained_magnus:
      return [p](double t) -> Mat {
        return Mat(transmon_w1_ctrl_c(p, t) + transmon_w1_diag(p, t) + transmon_w2_eff(p, t));
      };
    case RunStrategy::drag_baseline: {
      auto set = drag_baseline(p, cfg.drag);
      auto term = set.terms.front();
      return [term](double t) { return term(t); };
    }
    default: throw std::invalid_argument("strategy not valid for transmon");
  }
}

TimeDepOperator transmon_h_total(const TransmonParams& p,
                                 const std::function<Mat(double)>& w) {
  auto [ti, tf] = p.window();
  return TimeDepOperator(ti, tf, [p, w](double t) -> Mat {
    Mat h = Mat::Zero(3, 3);
    const double k = transmon_kappa(p, t);
    h(2, 2) = p.anharmonicity;
    h(0, 1) = h(1, 0) = k;
    h(1, 2) = h(2, 1) = p.lambda_rel * k;
    if (w) h += w(t);
    return h;
  });
}

double transmon_infidelity(const TransmonParams& p, const std::function<Mat(double)>& w,
                           double tol) {
  auto [ti, tf] = p.window();
  auto u = propagate(transmon_h_total(p, w), ti, tf, tol);
  const Mat u_err = u0_closed_form(p, tf).adjoint() * u->u(tf);
  return 1.0 - avg_fidelity(u_err, HilbertPartition(3, 2), FBarConvention::computational);
}

std::function<Mat(double)> mlz_correction(const MlzParams& p, RunStrategy s, double tol) {
  switch (s) {
    case RunStrategy::none: return nullptr;
    case RunStrategy::td: return [p](double tau) { return td_reference(p, tau); };
    case RunStrategy::satd: return [p](double tau) { return satd_reference(p, tau); };
    case RunStrategy::w1:
    case RunStrategy::w1w2: {
      auto corr = mlz_generating_correction(p, tol);
      auto frame = superadiabatic_frame(p);
      auto w1 = corr.set.terms[0];
      auto w2 = corr.set.terms[1];
      const bool second = s == RunStrategy::w1w2;
      return [p, frame, w1, w2, second](double tau) -> Mat {
        Mat w_sad = w1(tau);
        if (second) w_sad += w2(tau);
        return Mat(satd_reference(p, tau) + mlz_sad_to_lab(frame, w_sad, tau));
      };
    }
    default: throw std::invalid_argument("strategy not valid for mlz");
  }
}

TimeDepOperator mlz_h_total(const MlzParams& p, const std::function<Mat(double)>& w) {
  return TimeDepOperator(p.tau_i, p.tau_f, [p, w](double tau) -> Mat {
    Mat h = mlz_h0_lab(p, tau) + mlz_v_lab(p);
    if (w) h += w(tau);
    return h;
  });
}

struct Channels {
  std::vector<std::string> names;
  std::vector<std::function<cxd(double)>> f;
  double ti = 0.0, tf = 0.0;
};

Channels pulse_channels(const RunConfig& cfg, RunStrategy strategy, double value) {
  Channels ch;
  switch (cfg.model) {
    case Model::stirap_const:
    case Model::stirap_gauss: {
      const auto shape = cfg.model == Model::stirap_const ? StirapShape::vitanov
                                                          : StirapShape::gaussian;
      StirapParams p = stirap_params(cfg, value, shape);
      std::tie(ch.ti, ch.tf) = p.window();
      std::function<Mat(double)> w;
      if (cfg.model == Model::stirap_const) {
        w = stirap_correction(p, strategy);
      } else {
        GaussianStirap gs(p);
        w = gauss_correction(gs, strategy);
      }
      ch.names = {"gp", "gs"};
      if (!w) {
        ch.f = {[p](double t) -> cxd { return stirap_gp(p, t); },
                [p](double t) -> cxd { return stirap_gs(p, t); }};
      } else {
        auto [ti, tf] = p.window();
        TimeDepOperator w_op(ti, tf, w);
        auto pulses = corrected_lab_pulses(p, w_op, 1e-6);
        ch.f = {pulses.gp, pulses.gs};
      }
      break;
    }
    case Model::transmon: {
      TransmonParams p = transmon_params(cfg, value);
      std::tie(ch.ti, ch.tf) = p.window();
      auto w = transmon_correction(cfg, p, strategy);
      auto h = transmon_h_total(p, w);
      ch.names = {"k01", "k12", "k02", "delta0", "delta1", "delta2"};
      auto entry = [h](int i, int j) {
        return [h, i, j](double t) -> cxd { return h(t)(i, j); };
      };
      ch.f = {entry(0, 1), entry(1, 2), entry(0, 2), entry(0, 0), entry(1, 1), entry(2, 2)};
      break;
    }
    case Model::mlz: {
      MlzParams p = mlz_params(cfg, value);
      ch.ti = p.tau_i;
      ch.tf = p.tau_f;
      auto w = mlz_correction(p, strategy, cfg.tol);
      auto h = mlz_h_total(p, w);
      ch.names = {"delta0", "delta1", "c01", "c12", "c13", "c02", "c03", "c23"};
      auto entry = [h](int i, int j) {
        return [h, i, j](double t) -> cxd { return h(t)(i, j); };
      };
      ch.f = {entry(0, 0), entry(1, 1), entry(0, 1), entry(1, 2),
              entry(1, 3), entry(0, 2), entry(0, 3), entry(2, 3)};
      break;
    }
  }
  return ch;
}

double certificate_value(const RunConfig& cfg, double value) {
  // spectral norms are invariant under the interaction-picture conjugation,
  // so the certificate is the plain time integral of ||V(t)||_2
  switch (cfg.model) {
    case Model::stirap_const:
    case Model::stirap_gauss: {
      const auto shape = cfg.model == Model::stirap_const ? StirapShape::vitanov
                                                          : StirapShape::gaussian;
      StirapParams p = stirap_params(cfg, value, shape);
      auto prob = shape == StirapShape::vitanov ? build_constant_gap(p) : build_gaussian(p);
      return convergence_certificate(prob.v, prob.ti, prob.tf);
    }
    case Model::transmon: {
      auto prob = build_transmon(transmon_params(cfg, value));
      TimeDepOperator v_eff(prob.ti, prob.tf,
                            [prob](double t) { return Mat(prob.epsilon * prob.v(t)); });
      return convergence_certificate(v_eff, prob.ti, prob.tf);
    }
    case Model::mlz: {
      auto prob = build_mlz(mlz_params(cfg, value));
      return convergence_certificate(prob.v, prob.ti, prob.tf);
    }
  }
  return 0.0;
}

} // namespace

double evaluate_infidelity(const RunConfig& cfg, RunStrategy strategy, double value) {
  switch (cfg.model) {
    case Model::stirap_const: {
      StirapParams p = stirap_params(cfg, value, StirapShape::vitanov);
      auto [ti, tf] = p.window();
      return transfer_infidelity(stirap_h_total(p, stirap_correction(p, strategy)), ti, tf,
                                 0, 0, cfg.tol);
    }
    case Model::stirap_gauss: {
      StirapParams p = stirap_params(cfg, value, StirapShape::gaussian);
      GaussianStirap gs(p);
      auto [ti, tf] = p.window();
      return transfer_infidelity(stirap_h_total(p, gauss_correction(gs, strategy)), ti, tf,
                                 0, 0, cfg.tol);
    }
    case Model::transmon: {
      TransmonParams p = transmon_params(cfg, value);
      return transmon_infidelity(p, transmon_correction(cfg, p, strategy), cfg.tol);
    }
    case Model::mlz: {
      MlzParams p = mlz_params(cfg, value);
      return transfer_infidelity(mlz_h_total(p, mlz_correction(p, strategy, cfg.tol)),
                                 p.tau_i, p.tau_f, 0, 1, cfg.tol);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<SweepRecord> run_sweep(const RunConfig& cfg, int threads) {
  cfg.validate();
  std::vector<SweepRecord> records(cfg.grid.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cfg.grid.size()) return;
      SweepRecord& r = records[i];
      r.param = cfg.grid[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        for (auto s : cfg.strategies) r.infidelity.push_back(evaluate_infidelity(cfg, s, r.param));
        r.certificate = certificate_value(cfg, r.param);
        double amp = 0.0;
        for (auto s : cfg.strategies) {
          auto ch = pulse_channels(cfg, s, r.param);
          for (int k = 0; k <= 64; ++k) {
            const double t = ch.ti + (ch.tf - ch.ti) * k / 64.0;
            for (const auto& f : ch.f) amp = std::max(amp, std::abs(f(t)));
          }
        }
        r.max_amp = amp;
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
        r.infidelity.assign(cfg.strategies.size(), std::nan(""));
      }
      r.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    }
  };
  const int n = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return records;
}

// ---------------------------------------------------------------------------
// CSV

std::uint64_t config_hash(const std::string& raw_text) {
  std::uint64_t h = 1469598103934665603ull; // fnv-1a
  for (unsigned char c : raw_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

} // namespace

std::string sweep_csv(const RunConfig& cfg, const std::vector<SweepRecord>& records) {
  std::string out =
      fmt::format("# config_hash={:016x} tool_version={}\n", config_hash(cfg.raw_text), kToolVersion);
  out += fmt::format("{}[dimensionless]", cfg.sweep_param);
  for (auto s : cfg.strategies) out += fmt::format(",infidelity_{}[dimensionless]", to_string(s));
  out += ",max_amp[energy],certificate[dimensionless],ok,error\n";
  for (const auto& r : records) {
    out += num(r.param);
    for (double e : r.infidelity) out += "," + num(e);
    out += "," + num(r.max_amp) + "," + num(r.certificate) + "," + (r.ok ? "1" : "0") + "," +
           quote(r.error) + "\n";
  }
  return out;
}

std::vector<SweepRecord> parse_sweep_csv(const std::string& csv, std::size_t n_strategies) {
  std::vector<SweepRecord> out;
  std::istringstream is(csv);
  std::string line;
  bool header_skipped = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped) { // first non-comment line is the column header
      header_skipped = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (fields.size() != n_strategies + 5)
      throw std::invalid_argument("sweep CSV row has unexpected column count");
    SweepRecord r;
    r.param = std::stod(fields[0]);
    for (size_t k = 0; k < n_strategies; ++k)
      r.infidelity.push_back(fields[1 + k] == "nan" ? std::nan("") : std::stod(fields[1 + k]));
    r.max_amp = std::stod(fields[n_strategies + 1]);
    r.certificate = std::stod(fields[n_strategies + 2]);
    r.ok = fields[n_strategies + 3] == "1";
    r.error = fields[n_strategies + 4];
    out.push_back(std::move(r));
  }
  return out;
}

std::string pulses_csv(const RunConfig& cfg, RunStrategy strategy, double value,
                       int n_samples) {
  auto ch = pulse_channels(cfg, strategy, value);
  std::string out =
      fmt::format("# config_hash={:016x} tool_version={}\n", config_hash(cfg.raw_text), kToolVersion);
  out += "t[1/energy]";
  for (const auto& n : ch.names) out += fmt::format(",{}_re[energy],{}_im[energy]", n, n);
  out += "\n";
  for (int k = 0; k < n_samples; ++k) {
    const double t = ch.ti + (ch.tf - ch.ti) * k / (n_samples - 1);
    out += num(t);
    for (const auto& f : ch.f) {
      const cxd v = f(t);
      out += "," + num(v.real()) + "," + num(v.imag());
    }
    out += "\n";
  }
  return out;
}

int run_check(int threads) {
  const std::string cfg_text =
      "[run]\n"
      "model = stirap_const\n"
      "strategies = none, w1\n"
      "sweep = nu\n"
      "grid = 0.4 0.6\n"
      "tol = 1e-9\n";
  try {
    auto cfg = parse_config_text(cfg_text);
    auto rec1 = run_sweep(cfg, threads);
    auto rec2 = run_sweep(cfg, 1);
    const std::string csv1 = sweep_csv(cfg, rec1);
    const std::string csv2 = sweep_csv(cfg, rec2);
    if (csv1 != csv2) {
      fmt::print(stderr, "check: sweep output is not deterministic\n");
      return 3;
    }
    auto parsed = parse_sweep_csv(csv1, cfg.strategies.size());
    if (sweep_csv(cfg, parsed) != csv1) {
      fmt::print(stderr, "check: CSV round-trip mismatch\n");
      return 3;
    }
    for (const auto& r : parsed)
      for (double e : r.infidelity)
        if (!(e >= 0.0 && e <= 1.0)) {
          fmt::print(stderr, "check: infidelity out of [0,1]\n");
          return 3;
        }
    auto p1 = pulses_csv(cfg, RunStrategy::w1, 0.5, 64);
    auto p2 = pulses_csv(cfg, RunStrategy::w1, 0.5, 64);
    if (p1 != p2) {
      fmt::print(stderr, "check: pulse output is not deterministic\n");
      return 3;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "check: {}\n", e.what());
    return 3;
  }
  fmt::print("check: ok\n");
  return 0;
}

} // namespace mqc
