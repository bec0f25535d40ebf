#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pxlap/problem.hpp"

namespace pxlap {

// Any reason a config cannot become a validated Problem: unreadable file,
// malformed JSON, schema violations, or validate() rejections.  The message
// aggregates every issue found.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LoadedConfig {
  Problem problem;
  nlohmann::json normalized;  // defaults materialized; load(normalized) is a fixed point
};

// Schema (all keys except domain, grid, exponents, nonlinearity optional):
//   domain        {"kind":"interval","length":L} | {"kind":"rectangle","lx":..,"ly":..}
//   grid          {"nodes":n} | {"nx":..,"ny":..}
//   exponents     {"p":spec,"q":spec} with spec = number | {"constant":v}
//                 | {"expression":"1.5+0.3*x"} | {"piecewise_x":{"split":s,"left":a,"right":b}}
//   nonlinearity  {"r":spec,"s":spec,"positive_part_term":bool,"constants":{c1..c4}}
//   lambda        positive number
//   sobolev_constant  "estimate" | positive number
//   tolerances    {constraint,residual,energy,fibering,critical_set,luxemburg,
//                  grad_regularization}
//   seeds         {"positive":seed,"negative":seed} with seed = {"bump":{"center":[x(,y)],
//                 "radius":r,"amplitude":a}} | {"expression":"..."}
//   max_iterations, rng_seed, sobolev_starts, sobolev_iterations, concurrent
//   suite         {"pairs":n,"f2_samples":n}
LoadedConfig load_config_json(const nlohmann::json& j);
LoadedConfig load_config_text(const std::string& text);
LoadedConfig load_config_file(const std::string& path);

}  // namespace pxlap
