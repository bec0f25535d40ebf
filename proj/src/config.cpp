#include "pxlap/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "pxlap/expression.hpp"

namespace pxlap {

namespace {

using nlohmann::json;

struct Ctx {
  std::vector<std::string> issues;
  void add(std::string m) { issues.push_back(std::move(m)); }
  bool ok() const { return issues.empty(); }
  [[noreturn]] void raise() const {
    std::string joined = "config rejected:";
    for (const std::string& s : issues) joined += "\n  - " + s;
    throw ConfigError(joined);
  }
};

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const char* where, Ctx& ctx) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* a : allowed)
      if (item.key() == a) found = true;
    if (!found) ctx.add(std::string(where) + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const char* key, double fallback, const char* where,
                  Ctx& ctx) {
  if (!obj.contains(key)) {
    ctx.add(std::string(where) + ": missing '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) {
    ctx.add(std::string(where) + ": '" + key + "' must be a number");
    return fallback;
  }
  return obj[key].get<double>();
}

int get_count(const json& obj, const char* key, int fallback, const char* where, Ctx& ctx) {
  if (!obj.contains(key)) {
    ctx.add(std::string(where) + ": missing '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer() || obj[key].get<long long>() < 1) {
    ctx.add(std::string(where) + ": '" + key + "' must be a positive integer");
    return fallback;
  }
  return static_cast<int>(obj[key].get<long long>());
}

GridPtr parse_grid(const json& domain, const json& grid_spec, Ctx& ctx, json& norm_domain,
                   json& norm_grid) {
  if (!domain.is_object() || !grid_spec.is_object()) {
    ctx.add("domain and grid must be objects");
    return nullptr;
  }
  const std::string kind = domain.contains("kind") && domain["kind"].is_string()
                               ? domain["kind"].get<std::string>()
                               : "";
  try {
    if (kind == "interval") {
      check_keys(domain, {"kind", "length"}, "domain", ctx);
      check_keys(grid_spec, {"nodes"}, "grid", ctx);
      const double length = get_number(domain, "length", 1.0, "domain", ctx);
      const int nodes = get_count(grid_spec, "nodes", 3, "grid", ctx);
      if (!ctx.ok()) return nullptr;
      norm_domain = {{"kind", "interval"}, {"length", length}};
      norm_grid = {{"nodes", nodes}};
      return Grid::line(length, nodes);
    }
    if (kind == "rectangle") {
      check_keys(domain, {"kind", "lx", "ly"}, "domain", ctx);
      check_keys(grid_spec, {"nx", "ny"}, "grid", ctx);
      const double lx = get_number(domain, "lx", 1.0, "domain", ctx);
      const double ly = get_number(domain, "ly", 1.0, "domain", ctx);
      const int nx = get_count(grid_spec, "nx", 3, "grid", ctx);
      const int ny = get_count(grid_spec, "ny", 3, "grid", ctx);
      if (!ctx.ok()) return nullptr;
      norm_domain = {{"kind", "rectangle"}, {"lx", lx}, {"ly", ly}};
      norm_grid = {{"nx", nx}, {"ny", ny}};
      return Grid::rectangle(lx, ly, nx, ny);
    }
  } catch (const std::invalid_argument& e) {
    ctx.add(std::string("domain/grid: ") + e.what());
    return nullptr;
  }
  ctx.add("domain: 'kind' must be 'interval' or 'rectangle'");
  return nullptr;
}

ExponentField parse_exponent(const json& spec, GridPtr grid, const char* name, Ctx& ctx,
                             json& norm) {
  ExponentField fallback = ExponentField::constant(grid, 2.0);
  try {
    if (spec.is_number()) {
      const double v = spec.get<double>();
      norm = {{"constant", v}};
      return ExponentField::constant(grid, v);
    }
    if (spec.is_object() && spec.contains("constant")) {
      check_keys(spec, {"constant"}, name, ctx);
      const double v = get_number(spec, "constant", 2.0, name, ctx);
      norm = {{"constant", v}};
      return ctx.ok() ? ExponentField::constant(grid, v) : fallback;
    }
    if (spec.is_object() && spec.contains("expression")) {
      check_keys(spec, {"expression"}, name, ctx);
      if (!spec["expression"].is_string()) {
        ctx.add(std::string(name) + ": 'expression' must be a string");
        return fallback;
      }
      const Expression ex = Expression::parse(spec["expression"].get<std::string>());
      norm = {{"expression", ex.text()}};
      return ExponentField::from_function(grid,
                                          [&](double x, double y) { return ex.eval(x, y); });
    }
    if (spec.is_object() && spec.contains("piecewise_x")) {
      check_keys(spec, {"piecewise_x"}, name, ctx);
      const json& pw = spec["piecewise_x"];
      if (!pw.is_object()) {
        ctx.add(std::string(name) + ": 'piecewise_x' must be an object");
        return fallback;
      }
      check_keys(pw, {"split", "left", "right"}, name, ctx);
      const double split = get_number(pw, "split", 0.5, name, ctx);
      const double left = get_number(pw, "left", 2.0, name, ctx);
      const double right = get_number(pw, "right", 2.0, name, ctx);
      norm = {{"piecewise_x", {{"split", split}, {"left", left}, {"right", right}}}};
      if (!ctx.ok()) return fallback;
      return ExponentField::from_function(
          grid, [=](double x, double) { return x < split ? left : right; });
    }
  } catch (const ExpressionError& e) {
    ctx.add(std::string(name) + ": " + e.what());
    return fallback;
  } catch (const std::invalid_argument& e) {
    ctx.add(std::string(name) + ": " + e.what());
    return fallback;
  }
  ctx.add(std::string(name) +
          ": expected a number, {constant}, {expression} or {piecewise_x}");
  return fallback;
}

ScalarField parse_seed(const json& spec, GridPtr grid, const char* name, Ctx& ctx,
                       json& norm) {
  ScalarField fallback(grid);
  if (spec.is_object() && spec.contains("bump")) {
    check_keys(spec, {"bump"}, name, ctx);
    const json& b = spec["bump"];
    if (!b.is_object()) {
      ctx.add(std::string(name) + ": 'bump' must be an object");
      return fallback;
    }
    check_keys(b, {"center", "radius", "amplitude"}, name, ctx);
    double cx = 0.0, cy = 0.0;
    if (!b.contains("center") || !b["center"].is_array() ||
        b["center"].size() != static_cast<size_t>(grid->dimension())) {
      ctx.add(std::string(name) + ": 'center' must be an array matching the dimension");
    } else {
      cx = b["center"][0].get<double>();
      if (grid->dimension() == 2) cy = b["center"][1].get<double>();
    }
    const double radius = get_number(b, "radius", 0.1, name, ctx);
    const double amplitude = get_number(b, "amplitude", 1.0, name, ctx);
    if (radius <= 0.0) ctx.add(std::string(name) + ": 'radius' must be positive");
    json center = json::array({cx});
    if (grid->dimension() == 2) center.push_back(cy);
    norm = {{"bump", {{"center", center}, {"radius", radius}, {"amplitude", amplitude}}}};
    if (!ctx.ok()) return fallback;
    return bump_field(grid, cx, cy, radius, amplitude);
  }
  if (spec.is_object() && spec.contains("expression")) {
    check_keys(spec, {"expression"}, name, ctx);
    if (!spec["expression"].is_string()) {
      ctx.add(std::string(name) + ": 'expression' must be a string");
      return fallback;
    }
    try {
      const Expression ex = Expression::parse(spec["expression"].get<std::string>());
      norm = {{"expression", ex.text()}};
      return ScalarField::from_function(grid,
                                        [&](double x, double y) { return ex.eval(x, y); });
    } catch (const ExpressionError& e) {
      ctx.add(std::string(name) + ": " + e.what());
      return fallback;
    }
  }
  ctx.add(std::string(name) + ": expected {bump} or {expression}");
  return fallback;
}

json default_bump_norm(GridPtr grid, bool positive) {
  // mirrors the Problem::make seed recipe
  const double lx = grid->extent(0);
  const double ly = grid->dimension() == 2 ? grid->extent(1) : 0.0;
  double radius = 0.2 * lx;
  if (grid->dimension() == 2) radius = 0.2 * std::min(lx, ly);
  json center = json::array({positive ? 0.25 * lx : 0.75 * lx});
  if (grid->dimension() == 2) center.push_back(0.5 * ly);
  return {{"bump",
           {{"center", center}, {"radius", radius}, {"amplitude", positive ? 1.0 : -1.0}}}};
}

}  // namespace

LoadedConfig load_config_json(const json& j) {
  Ctx ctx;
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(j,
             {"domain", "grid", "exponents", "nonlinearity", "lambda", "sobolev_constant",
              "tolerances", "seeds", "max_iterations", "rng_seed", "sobolev_starts",
              "sobolev_iterations", "concurrent", "suite"},
             "config", ctx);
  for (const char* key : {"domain", "grid", "exponents", "nonlinearity"})
    if (!j.contains(key)) ctx.add(std::string("config: missing '") + key + "'");
  if (!ctx.ok()) ctx.raise();

  json norm;
  GridPtr grid = parse_grid(j["domain"], j["grid"], ctx, norm["domain"], norm["grid"]);
  if (!grid) ctx.raise();

  if (!j["exponents"].is_object()) ctx.add("exponents: expected an object");
  if (!j["nonlinearity"].is_object()) ctx.add("nonlinearity: expected an object");
  if (!ctx.ok()) ctx.raise();
  check_keys(j["exponents"], {"p", "q"}, "exponents", ctx);
  check_keys(j["nonlinearity"], {"r", "s", "positive_part_term", "constants"},
             "nonlinearity", ctx);
  for (const char* key : {"p", "q"})
    if (!j["exponents"].contains(key)) ctx.add(std::string("exponents: missing '") + key + "'");
  for (const char* key : {"r", "s"})
    if (!j["nonlinearity"].contains(key))
      ctx.add(std::string("nonlinearity: missing '") + key + "'");
  if (!ctx.ok()) ctx.raise();

  ExponentField p = parse_exponent(j["exponents"]["p"], grid, "exponents.p", ctx,
                                   norm["exponents"]["p"]);
  ExponentField q = parse_exponent(j["exponents"]["q"], grid, "exponents.q", ctx,
                                   norm["exponents"]["q"]);
  ExponentField r = parse_exponent(j["nonlinearity"]["r"], grid, "nonlinearity.r", ctx,
                                   norm["nonlinearity"]["r"]);
  ExponentField s = parse_exponent(j["nonlinearity"]["s"], grid, "nonlinearity.s", ctx,
                                   norm["nonlinearity"]["s"]);

  bool pos_term = true;
  if (j["nonlinearity"].contains("positive_part_term")) {
    if (j["nonlinearity"]["positive_part_term"].is_boolean())
      pos_term = j["nonlinearity"]["positive_part_term"].get<bool>();
    else
      ctx.add("nonlinearity: 'positive_part_term' must be a boolean");
  }
  norm["nonlinearity"]["positive_part_term"] = pos_term;

  double lambda = 1.0;
  if (j.contains("lambda")) {
    if (j["lambda"].is_number())
      lambda = j["lambda"].get<double>();
    else
      ctx.add("config: 'lambda' must be a number");
  }
  norm["lambda"] = lambda;
  if (!ctx.ok()) ctx.raise();

  std::optional<Nonlinearity> nl_opt;
  try {
    nl_opt = Nonlinearity::example(r, s, p.sup(), pos_term);
  } catch (const std::invalid_argument& e) {
    ctx.add(std::string("nonlinearity: ") + e.what());
    ctx.raise();
  }
  Nonlinearity& nl = *nl_opt;
  if (j["nonlinearity"].contains("constants")) {
    const json& c = j["nonlinearity"]["constants"];
    if (!c.is_object()) {
      ctx.add("nonlinearity: 'constants' must be an object");
    } else {
      check_keys(c, {"c1", "c2", "c3", "c4"}, "nonlinearity.constants", ctx);
      if (c.contains("c1")) nl.c1 = get_number(c, "c1", nl.c1, "nonlinearity.constants", ctx);
      if (c.contains("c2")) nl.c2 = get_number(c, "c2", nl.c2, "nonlinearity.constants", ctx);
      if (c.contains("c3")) nl.c3 = get_number(c, "c3", nl.c3, "nonlinearity.constants", ctx);
      if (c.contains("c4")) nl.c4 = get_number(c, "c4", nl.c4, "nonlinearity.constants", ctx);
    }
  }
  norm["nonlinearity"]["constants"] = {
      {"c1", nl.c1}, {"c2", nl.c2}, {"c3", nl.c3}, {"c4", nl.c4}};

  Problem prob = Problem::make(grid, p, q, nl, lambda);

  if (j.contains("sobolev_constant")) {
    const json& s_spec = j["sobolev_constant"];
    if (s_spec.is_string() && s_spec.get<std::string>() == "estimate")
      prob.sobolev_constant = std::numeric_limits<double>::quiet_NaN();
    else if (s_spec.is_number() && s_spec.get<double>() > 0.0)
      prob.sobolev_constant = s_spec.get<double>();
    else
      ctx.add("config: 'sobolev_constant' must be \"estimate\" or a positive number");
  }
  norm["sobolev_constant"] = std::isnan(prob.sobolev_constant)
                                 ? json("estimate")
                                 : json(prob.sobolev_constant);

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) {
      ctx.add("config: 'tolerances' must be an object");
    } else {
      check_keys(t,
                 {"constraint", "residual", "energy", "fibering", "critical_set",
                  "luxemburg", "grad_regularization"},
                 "tolerances", ctx);
      auto pick = [&](const char* key, double& slot) {
        if (t.contains(key)) slot = get_number(t, key, slot, "tolerances", ctx);
      };
      pick("constraint", prob.tol.constraint);
      pick("residual", prob.tol.residual);
      pick("energy", prob.tol.energy);
      pick("fibering", prob.tol.fibering);
      pick("critical_set", prob.tol.critical_set);
      pick("luxemburg", prob.tol.luxemburg);
      pick("grad_regularization", prob.tol.grad_regularization);
    }
  }
  norm["tolerances"] = {{"constraint", prob.tol.constraint},
                        {"residual", prob.tol.residual},
                        {"energy", prob.tol.energy},
                        {"fibering", prob.tol.fibering},
                        {"critical_set", prob.tol.critical_set},
                        {"luxemburg", prob.tol.luxemburg},
                        {"grad_regularization", prob.tol.grad_regularization}};

  if (j.contains("seeds")) {
    const json& seeds = j["seeds"];
    if (!seeds.is_object()) {
      ctx.add("config: 'seeds' must be an object");
    } else {
      check_keys(seeds, {"positive", "negative"}, "seeds", ctx);
      if (seeds.contains("positive"))
        prob.seed_pos =
            parse_seed(seeds["positive"], grid, "seeds.positive", ctx, norm["seeds"]["positive"]);
      if (seeds.contains("negative"))
        prob.seed_neg =
            parse_seed(seeds["negative"], grid, "seeds.negative", ctx, norm["seeds"]["negative"]);
    }
  }
  if (!norm.contains("seeds") || !norm["seeds"].contains("positive"))
    norm["seeds"]["positive"] = default_bump_norm(grid, true);
  if (!norm["seeds"].contains("negative"))
    norm["seeds"]["negative"] = default_bump_norm(grid, false);

  if (j.contains("max_iterations"))
    prob.max_iterations = get_count(j, "max_iterations", prob.max_iterations, "config", ctx);
  norm["max_iterations"] = prob.max_iterations;

  if (j.contains("rng_seed")) {
    if (j["rng_seed"].is_number_integer() && j["rng_seed"].get<long long>() >= 0)
      prob.rng_seed = j["rng_seed"].get<std::uint64_t>();
    else
      ctx.add("config: 'rng_seed' must be a nonnegative integer");
  }
  norm["rng_seed"] = prob.rng_seed;

  if (j.contains("sobolev_starts"))
    prob.sobolev_starts = get_count(j, "sobolev_starts", prob.sobolev_starts, "config", ctx);
  norm["sobolev_starts"] = prob.sobolev_starts;
  if (j.contains("sobolev_iterations"))
    prob.sobolev_iterations =
        get_count(j, "sobolev_iterations", prob.sobolev_iterations, "config", ctx);
  norm["sobolev_iterations"] = prob.sobolev_iterations;

  if (j.contains("concurrent")) {
    if (j["concurrent"].is_boolean())
      prob.concurrent_runs = j["concurrent"].get<bool>();
    else
      ctx.add("config: 'concurrent' must be a boolean");
  }
  norm["concurrent"] = prob.concurrent_runs;

  if (j.contains("suite")) {
    const json& su = j["suite"];
    if (!su.is_object()) {
      ctx.add("config: 'suite' must be an object");
    } else {
      check_keys(su, {"pairs", "f2_samples"}, "suite", ctx);
      if (su.contains("pairs")) prob.suite_pairs = get_count(su, "pairs", prob.suite_pairs, "suite", ctx);
      if (su.contains("f2_samples"))
        prob.f2_samples = get_count(su, "f2_samples", prob.f2_samples, "suite", ctx);
    }
  }
  norm["suite"] = {{"f2_samples", prob.f2_samples}, {"pairs", prob.suite_pairs}};

  if (!ctx.ok()) ctx.raise();
  try {
    validate(prob);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config rejected:\n") + e.what());
  }
  return {std::move(prob), std::move(norm)};
}

LoadedConfig load_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failed: ") + e.what());
  }
  return load_config_json(j);
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str());
}

}  // namespace pxlap
