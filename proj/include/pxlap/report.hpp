#pragma once

#include <string>

#include "json.hpp"
#include "pxlap/fields.hpp"
#include "pxlap/solver.hpp"

namespace pxlap {

// One row per node in storage order, header x,value or x,y,value.  Values
// are printed with %.17g so a reload reproduces the doubles bit for bit.
std::string field_to_csv(const ScalarField& u);

// Inverse of field_to_csv on the same grid; throws std::runtime_error when
// the row count or column count does not match.
ScalarField field_from_csv(const std::string& text, GridPtr grid);

void write_text_file(const std::string& path, const std::string& text);

nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const ThresholdInfo& t);
nlohmann::json to_json(const EmbeddingConstants& e);
nlohmann::json to_json(const F2Report& r);
nlohmann::json to_json(const LemmaAudit& a);
nlohmann::json to_json(const CriticalPoint& cp);
nlohmann::json to_json(const ThreeSolutions& s);

}  // namespace pxlap
