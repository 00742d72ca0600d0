#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "glutton/instance.hpp"

namespace glutton {

class SfiError : public std::runtime_error {
 public:
  SfiError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses and validates (metric axioms, disjoint demands). Distances below 1
// are accepted here; solvers normalize them.
Instance parse_sfi(std::istream& in);
Instance load_sfi(const std::string& path);

// Canonical form: matrix mode, rationals as p/q.
void write_sfi(const Instance& inst, std::ostream& out);
void save_sfi(const Instance& inst, const std::string& path);

// Square root of a nonnegative rational: exact when both parts are perfect
// squares, otherwise rounded up to a multiple of 1/10^6.
Rational sqrt_up(const Rational& x);

}  // namespace glutton
