#ifndef POLCAL_JSON_IO_HPP
#define POLCAL_JSON_IO_HPP

#include <json.hpp>

#include "polcal/derivative.hpp"
#include "polcal/homogeneity.hpp"
#include "polcal/polarization.hpp"
#include "polcal/taylor.hpp"

namespace polcal {

using Json = nlohmann::ordered_json;

// Exact scalars render as "p/q" (or "p"); floats as JSON numbers with
// shortest round-trip formatting.
Json to_json(const Scalar& s);
Json to_json(const Point& q);
Json to_json(const Direction& v);

// { "dim": d, "base": [..], "terms": [{"exp": [..], "coef": "p/q"}, ..] }
// in graded-lexicographic term order.
Json to_json(const Polynomial& p);

Json to_json(const PolarizationReport& report);
Json to_json(const HomogeneityVerdict& verdict);
Json to_json(const DerivativeEstimate& estimate);
Json to_json(const RemainderProfile& profile);

// Scalar literal from CLI text: "p/q", "p", or decimal (decimal forces Float).
Scalar scalar_from_text(const std::string& text);

}  // namespace polcal

#endif
