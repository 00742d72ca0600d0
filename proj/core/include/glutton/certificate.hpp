#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "glutton/rational.hpp"
#include "glutton/trace.hpp"

namespace glutton {

struct Check {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string measured;
  std::string bound;
  std::string witness;
  int evaluations = 0;
};

// Append-only ledger of named checks. Recording the same name again folds
// into one entry: it fails once any evaluation fails, and keeps the first
// failing evaluation's values as the witness.
class CertificateReport {
 public:
  explicit CertificateReport(std::string certifier = {}) : certifier_(std::move(certifier)) {}

  void record(const std::string& name, bool ok, const std::string& measured = {}, const std::string& bound = {},
              const std::string& witness = {});
  template <class M, class B>
    requires std::same_as<M, Rational> && std::same_as<B, Rational>
  void record(const std::string& name, bool ok, const M& measured, const B& bound, const std::string& witness = {}) {
    record(name, ok, to_string(measured), to_string(bound), witness);
  }
  void skip(const std::string& name, const std::string& reason);
  void absorb(const CertificateReport& other, const std::string& prefix = {});

  const std::string& certifier() const { return certifier_; }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool pass() const;
  int failures() const;

 private:
  std::string certifier_;
  std::vector<Check> checks_;
};

// Replays a solver trace and checks the structural facts every run should
// satisfy: feasibility, acyclicity, recorded cost, merge legality, merging
// distances, and the per-algorithm ordering properties.
CertificateReport check_trace(const Instance& inst, const RunTrace& trace);

}  // namespace glutton
