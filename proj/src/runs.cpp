#include "pxlap/runs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "pxlap/modular.hpp"

namespace pxlap {

namespace {

using nlohmann::json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Suite fields: mostly dense uniform noise with a log-uniform amplitude, the
// rest sparse spikes; the spikes are what stress the Holder constant.
ScalarField random_field(GridPtr grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  ScalarField f(grid);
  const double amp = std::pow(10.0, 3.0 * unif(rng));
  if (u01(rng) < 0.8) {
    for (double& v : f.values) v = amp * unif(rng);
  } else {
    std::uniform_int_distribution<int> node(0, f.size() - 1);
    std::uniform_int_distribution<int> count(1, 5);
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
      f.values[node(rng)] = amp * std::pow(10.0, 3.0 * u01(rng)) * (u01(rng) < 0.5 ? -1 : 1);
  }
  f.enforce_mask();
  if (f.max_abs() == 0.0) f.values[f.size() / 2] = grid->is_boundary(f.size() / 2) ? 0.0 : amp;
  if (f.max_abs() == 0.0) f.values[grid->index(1, grid->dimension() == 2 ? 1 : 0)] = amp;
  return f;
}

// Luxemburg norm of the constant-1 field over an arbitrary weighted sample
// set: the root of sum w sigma^{-e} = 1.
double const_one_norm(const std::vector<std::pair<double, double>>& we) {
  double total = 0.0, emin = 1e300, emax = 0.0;
  for (auto [w, e] : we) {
    total += w;
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  double lo = std::min(std::pow(total, 1.0 / emin), std::pow(total, 1.0 / emax));
  double hi = std::max(std::pow(total, 1.0 / emin), std::pow(total, 1.0 / emax));
  if (hi <= lo) return lo;
  auto mod = [&](double sigma) {
    double m = 0.0;
    for (auto [w, e] : we) m += w * std::pow(sigma, -e);
    return m;
  };
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mod(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Dirichlet fields obey |u(x,y)| <= sum of cell-edge increments along the
// x-line through (x,y); Holder on that line against the constant 1 gives
//   ||u||_p <= 2 ||1||_p * max_rows ||1||_{p',row} * K^{1/p^-} * ||grad u||_p
// with K the weight ratio between line quadrature (hx/2 per corner) and the
// corner rule (cell measure / 4), K = 2/hy in 2d and 1 in 1d.
double poincare_bound(const Discretization& disc, const ExponentField& p) {
  GridPtr grid = disc.grid_ptr();
  const ExponentField pc = conjugate_exponent(p);
  ScalarField ones(grid);
  for (double& v : ones.values) v = 1.0;
  ones.enforce_mask();
  const double n1 = luxemburg_norm(disc, ones, p);

  const int rows = grid->dimension() == 2 ? grid->resolution(1) : 1;
  std::vector<std::vector<std::pair<double, double>>> row_samples(rows);
  const double wline = 0.5 * grid->spacing(0);
  for (const Corner& c : disc.corners()) {
    if (grid->dimension() == 2 && c.node != c.y0) continue;  // bottom corners only
    const int j = grid->multi_index(c.node)[1];
    row_samples[j].push_back({wline, pc[c.node]});
  }
  double m1c = 0.0;
  for (const auto& rs : row_samples)
    if (!rs.empty()) m1c = std::max(m1c, const_one_norm(rs));

  const double K = grid->dimension() == 2 ? 2.0 / grid->spacing(1) : 1.0;
  return 2.0 * n1 * m1c * std::pow(K, 1.0 / p.inf());
}

json grid_echo(const LoadedConfig& cfg) {
  return {{"domain", cfg.normalized["domain"]}, {"grid", cfg.normalized["grid"]}};
}

}  // namespace

RunOutput run_solve(const LoadedConfig& cfg) {
  RunOutput out;
  const ThreeSolutions ts = solve_three(cfg.problem);
  out.report = to_json(ts);
  out.report["lambda"] = cfg.problem.lambda;
  out.report["config"] = cfg.normalized;
  out.files.emplace_back("solution_K1.csv", field_to_csv(ts.k1.field));
  out.files.emplace_back("solution_K2.csv", field_to_csv(ts.k2.field));
  out.files.emplace_back("solution_K3.csv", field_to_csv(ts.k3.field));
  out.ok = ts.ok;

  const CriticalPoint* pts[3] = {&ts.k1, &ts.k2, &ts.k3};
  const char* names[3] = {"K1", "K2", "K3"};
  for (int i = 0; i < 3; ++i) {
    out.summary += names[i];
    out.summary += ": ";
    out.summary += to_string(pts[i]->status);
    out.summary += "  energy=" + fmt("%.6g", pts[i]->energy.total);
    out.summary += "  residual=" + fmt("%.3g", pts[i]->residual_norm);
    out.summary += "  signature=";
    out.summary += to_string(pts[i]->sign_signature);
    out.summary += "\n";
  }
  out.summary += "threshold=" + fmt("%.6g", ts.threshold.value) +
                 "  S=" + fmt("%.6g", ts.threshold.S) +
                 "  distinct=" + (ts.distinct ? "yes" : "no") +
                 "  f2=" + (ts.f2.pass ? "pass" : "fail") + "\n";
  return out;
}

RunOutput run_spaces(const LoadedConfig& cfg) {
  RunOutput out;
  const Problem& prob = cfg.problem;
  const Discretization& disc = *prob.disc;
  GridPtr grid = prob.grid;
  std::mt19937_64 rng(prob.rng_seed);
  const int pairs = prob.suite_pairs;

  int hom_viol = 0, unit_viol = 0, bracket_viol = 0;
  double hom_worst = 0.0, unit_worst = 0.0;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int k = 0; k < pairs; ++k) {
    const ScalarField u = random_field(grid, rng);
    const double n = luxemburg_norm(disc, u, prob.p);
    const double t = std::pow(10.0, 2.0 * unif(rng));
    ScalarField tu = u;
    tu *= t;
    const double hom = std::fabs(luxemburg_norm(disc, tu, prob.p) - t * n) / (t * n);
    hom_worst = std::max(hom_worst, hom);
    if (hom > 1e-9) ++hom_viol;
    ScalarField unit = u;
    unit *= 1.0 / n;
    const double um = std::fabs(modular(disc, unit, prob.p) - 1.0);
    unit_worst = std::max(unit_worst, um);
    if (um > 1e-8) ++unit_viol;
    const double R = modular(disc, u, prob.p);
    const double b1 = std::pow(R, 1.0 / prob.p.inf());
    const double b2 = std::pow(R, 1.0 / prob.p.sup());
    if (n < std::min(b1, b2) * (1.0 - 1e-12) || n > std::max(b1, b2) * (1.0 + 1e-12))
      ++bracket_viol;
  }

  int holder_viol = 0;
  double holder_max_ratio = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const ScalarField f = random_field(grid, rng);
    const ScalarField g = random_field(grid, rng);
    const HolderCheck hc = holder_check(disc, f, g, prob.p);
    if (hc.rhs > 0.0) holder_max_ratio = std::max(holder_max_ratio, hc.lhs / hc.rhs);
    if (!hc.ok) ++holder_viol;
  }

  const double pbound = poincare_bound(disc, prob.p);
  int poincare_viol = 0;
  double poincare_max = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const ScalarField u = random_field(grid, rng);
    const double ratio = poincare_ratio(disc, u, prob.p);
    poincare_max = std::max(poincare_max, ratio);
    if (ratio > pbound * (1.0 + 1e-12)) ++poincare_viol;
  }

  const double lhp = log_holder_diagnostic(prob.p);
  const double lhq = log_holder_diagnostic(prob.q);

  out.ok = hom_viol + unit_viol + bracket_viol + holder_viol + poincare_viol == 0;
  out.report = {
      {"grid", grid_echo(cfg)},
      {"luxemburg",
       {{"samples", pairs},
        {"homogeneity", {{"violations", hom_viol}, {"worst", hom_worst}}},
        {"unit_modular", {{"violations", unit_viol}, {"worst", unit_worst}}},
        {"bracket", {{"violations", bracket_viol}}}}},
      {"holder",
       {{"pairs", pairs}, {"violations", holder_viol}, {"max_ratio", holder_max_ratio}}},
      {"poincare",
       {{"pairs", pairs},
        {"violations", poincare_viol},
        {"bound", pbound},
        {"max_ratio", poincare_max}}},
      {"log_holder", {{"p", lhp}, {"q", lhq}}},
      {"pass", out.ok}};

  auto line = [&](const char* name, int viol, const std::string& extra) {
    out.summary += std::string(viol == 0 ? "pass" : "FAIL") + "  " + name + "  " + extra + "\n";
  };
  line("luxemburg homogeneity", hom_viol, "worst=" + fmt("%.3g", hom_worst));
  line("luxemburg unit-modular", unit_viol, "worst=" + fmt("%.3g", unit_worst));
  line("luxemburg bracket", bracket_viol, "");
  line("holder", holder_viol, "max_ratio=" + fmt("%.3g", holder_max_ratio));
  line("poincare", poincare_viol,
       "max_ratio=" + fmt("%.3g", poincare_max) + " bound=" + fmt("%.3g", pbound));
  out.summary += "log-holder diagnostic: p=" + fmt("%.3g", lhp) + " q=" + fmt("%.3g", lhq) + "\n";
  return out;
}

RunOutput run_fiber(const LoadedConfig& cfg, const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw ConfigError("fiber: lambda list is empty");
  for (double l : lambdas)
    if (!(l > 0.0)) throw ConfigError("fiber: lambdas must be positive");

  RunOutput out;
  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());

  struct Row {
    double lambda, t, phi, residual;
    int evaluations;
  };
  std::vector<Row> rows;
  const ScalarField& w0 = cfg.problem.seed_pos;
  for (double l : sorted) {
    Problem pb = cfg.problem;
    pb.lambda = l;
    const FiberResult fr = fibering_root(pb, w0);
    ScalarField scaled = w0;
    scaled *= fr.t;
    rows.push_back({l, fr.t, phi(pb, scaled).total, fr.residual, fr.evaluations});
  }

  bool monotone = true;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].lambda == rows[i - 1].lambda) {
      monotone = monotone && rows[i].t == rows[i - 1].t;  // determinism
    } else {
      monotone = monotone && rows[i].t < rows[i - 1].t;
    }
  }

  std::string csv = "lambda,t,phi\n";
  json jrows = json::array();
  out.summary = "lambda        t_lambda      phi(t*w0)\n";
  for (const Row& r : rows) {
    csv += fmt("%.17g", r.lambda) + "," + fmt("%.17g", r.t) + "," + fmt("%.17g", r.phi) + "\n";
    jrows.push_back({{"lambda", r.lambda},
                     {"t", r.t},
                     {"phi", r.phi},
                     {"residual", r.residual},
                     {"evaluations", r.evaluations}});
    out.summary += fmt("%-13.6g", r.lambda) + fmt("%-13.6g", r.t) + fmt("%-13.6g", r.phi) + "\n";
  }
  out.summary += monotone ? "t_lambda strictly decreasing: yes\n"
                          : "t_lambda strictly decreasing: NO\n";
  out.files.emplace_back("fiber.csv", csv);
  out.ok = monotone;
  out.report = {{"rows", jrows}, {"monotone", monotone}, {"pass", monotone}};
  return out;
}

}  // namespace pxlap
