#pragma once

#include <json.hpp>

#include "smallval/factor.hpp"

namespace smallval::polyz {

struct PolyMeasure {
  Int content;
  Rat height;
  Int length;
  Int sup_norm;
};

inline PolyMeasure measure(const IntPolynomial& p) {
  if (p.is_zero()) fail(ErrorKind::Precondition, "undefined measure");
  PolyMeasure m;
  m.content = p.content();
  m.sup_norm = p.sup_norm();
  m.length = p.length();
  m.height = Rat(m.sup_norm, m.content);
  m.height.canonicalize();
  return m;
}

inline IntPolynomial divided_derivative(const IntPolynomial& p, size_t j) { return p.divided_derivative(j); }

inline nlohmann::json to_json(const IntPolynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  if (p.is_zero()) a.push_back("0");
  for (auto& c : p.coeffs()) a.push_back(c.get_str(10));
  return a;
}

inline IntPolynomial from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorKind::Config, "polynomial JSON must be an array of decimal strings");
  std::vector<Int> c;
  for (auto& v : j) {
    if (v.is_string())
      c.push_back(parse_int(v.get<std::string>()));
    else if (v.is_number_integer())
      c.emplace_back(v.get<long>());
    else
      fail(ErrorKind::Config, "polynomial coefficient must be a decimal string");
  }
  return IntPolynomial(std::move(c));
}

} // namespace smallval::polyz
