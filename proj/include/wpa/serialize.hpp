#pragma once

#include <string>

#include <json.hpp>

#include "wpa/construction.hpp"
#include "wpa/potential.hpp"
#include "wpa/weighted_approx.hpp"

namespace wpa {

using json = nlohmann::ordered_json;

// Rounds to 12 significant digits; non-finite values become "inf", "-inf", "nan".
json num(double v);
json cnum(Complex z);
std::string fmt12(double v);

json to_json(const CriterionReport& r);
json to_json(const FitResult& r, bool with_residuals = true);
json to_json(const ConstructionCertificate& c);
json to_json(const StageResult& r);
json to_json(const ComplexPolynomial& p);

std::string dump(const json& j);

// Parses "c0,c1,..." where each entry is a real or "re:im".
ComplexPolynomial parse_polynomial(const std::string& text);

}  // namespace wpa
