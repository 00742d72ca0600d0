#pragma once

#include <string>
#include <vector>

#include "glutton/instance.hpp"

namespace testing_helpers {

using glutton::Demand;
using glutton::Instance;
using glutton::Matrix;
using glutton::Rational;

inline Rational R(const std::string& s) { return glutton::parse_rational(s); }

// Instance from integer rows.
inline Instance from_rows(const std::vector<std::vector<long>>& rows, std::vector<Demand> demands) {
  Matrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (long x : r) m.back().emplace_back(x);
  }
  return Instance(std::move(m), std::move(demands));
}

// Points on a line at the given integer positions.
inline Instance on_line(const std::vector<long>& pos, std::vector<Demand> demands) {
  Matrix m(pos.size(), std::vector<Rational>(pos.size()));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) m[i][j] = Rational(pos[i] > pos[j] ? pos[i] - pos[j] : pos[j] - pos[i]);
  return Instance(std::move(m), std::move(demands));
}

}  // namespace testing_helpers
