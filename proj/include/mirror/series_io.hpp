#pragma once

// JSON form of a series: {"order": M, "coeffs": [{"num": "...", "den": "..."}, ...]}
// with decimal strings of arbitrary length. Round trips are bit-exact.

#include "mirror/series.hpp"

#include <json.hpp>

#include <string>

namespace mirror {

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const nlohmann::json& j);

std::string series_to_csv(const TruncSeries& s);

}  // namespace mirror
