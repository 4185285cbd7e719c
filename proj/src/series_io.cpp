#include "mirror/series_io.hpp"

#include <sstream>

namespace mirror {

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  Integer num, den;
  if (num.set_str(j.at("num").get<std::string>(), 10) != 0 ||
      den.set_str(j.at("den").get<std::string>(), 10) != 0) {
    throw ParameterError("malformed rational in JSON");
  }
  if (den <= 0) {
    throw ParameterError("JSON rational needs a positive denominator");
  }
  return make_rational(num, den);
}

nlohmann::json series_to_json(const TruncSeries& s) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) {
    coeffs.push_back(rational_to_json(c));
  }
  return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

TruncSeries series_from_json(const nlohmann::json& j) {
  auto order = j.at("order").get<std::size_t>();
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || coeffs.size() != order + 1) {
    throw ParameterError("series JSON: coeffs length must be order + 1");
  }
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    out.push_back(rational_from_json(c));
  }
  return TruncSeries(std::move(out));
}

std::string series_to_csv(const TruncSeries& s) {
  std::ostringstream os;
  os << "index,num,den\n";
  for (std::size_t i = 0; i <= s.order(); ++i) {
    os << i << ',' << s[i].get_num() << ',' << s[i].get_den() << '\n';
  }
  return os.str();
}

}  // namespace mirror
