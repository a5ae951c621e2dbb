// JSON encoding of dense complex matrices:
//   {"dim": n, "re": [[row-major reals]], "im": [[row-major reals]]}
#pragma once

#include <json.hpp>

#include "spinscale/spin_algebra.hpp"

namespace spinscale {

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  const int n = m.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int r = 0; r < n; ++r) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (int c = 0; c < n; ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return nlohmann::json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const int n = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
    throw dimension_error("matrix_from_json: row count does not match dim");
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const auto& re_row = re.at(r);
    const auto& im_row = im.at(r);
    if (static_cast<int>(re_row.size()) != n || static_cast<int>(im_row.size()) != n)
      throw dimension_error("matrix_from_json: column count does not match dim");
    for (int c = 0; c < n; ++c)
      m(r, c) = cdouble(re_row.at(c).get<double>(), im_row.at(c).get<double>());
  }
  return m;
}

}  // namespace spinscale
