#pragma once

#include <json.hpp>

#include "rdens/density.hpp"
#include "rdens/divisibility.hpp"
#include "rdens/harness.hpp"
#include "rdens/kummer.hpp"

namespace rdens {

using Json = nlohmann::ordered_json;

// Reduced "num/den", or just "num" for integers.
std::string fraction(const Rational& q);

Json to_json(const TowerData& tower);
Json to_json(const DivisibilityParameters& params);
Json to_json(const QuotientStructure& q);
Json to_json(const DensityResult& result);
Json to_json(const DensityBracket& bracket);
Json to_json(const EmpiricalReport& report);

}  // namespace rdens
