#include "glutton/instance.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace glutton {

Instance::Instance(Matrix dist, std::vector<Demand> demands)
    : dist_(std::move(dist)), demands_(std::move(demands)) {
  const int n = num_vertices();
  term_of_vertex_.assign(n, -1);
  for (int k = 0; k < num_pairs(); ++k) {
    const Demand& dm = demands_[k];
    if (dm.s >= 0 && dm.s < n && term_of_vertex_[dm.s] < 0) term_of_vertex_[dm.s] = 2 * k;
    if (dm.t >= 0 && dm.t < n && term_of_vertex_[dm.t] < 0) term_of_vertex_[dm.t] = 2 * k + 1;
  }
  for (const auto& row : dist_)
    for (const auto& x : row) {
      den_ = std::lcm(den_, x.denominator());
      if (den_ > (std::int64_t{1} << 40)) throw std::overflow_error("distance denominators are too large");
    }
  int_dist_.assign(n, std::vector<std::int64_t>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < static_cast<int>(dist_[u].size()) && v < n; ++v) {
      const Rational& x = dist_[u][v];
      int_dist_[u][v] = x.numerator() * (den_ / x.denominator());
    }
}

Instance Instance::scaled(const Rational& factor) const {
  Matrix m = dist_;
  for (auto& row : m)
    for (auto& x : row) x *= factor;
  return Instance(std::move(m), demands_);
}

ValidationReport validate(const Instance& inst, bool allow_rescale) {
  auto fail = [](const std::string& msg) { return ValidationReport{false, msg}; };
  const int n = inst.num_vertices();
  const Matrix& m = inst.dist();
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(m[u].size()) != n) {
      std::ostringstream os;
      os << "matrix row " << u << " has " << m[u].size() << " entries, expected " << n;
      return fail(os.str());
    }
  }
  for (int u = 0; u < n; ++u) {
    if (m[u][u] != 0) return fail("nonzero diagonal at (" + std::to_string(u) + "," + std::to_string(u) + ")");
    for (int v = 0; v < n; ++v) {
      if (m[u][v] < 0)
        return fail("negative distance at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      if (m[u][v] != m[v][u])
        return fail("asymmetry at (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m[a][c] > m[a][b] + m[b][c]) {
          std::ostringstream os;
          os << "triangle violation (" << a << "," << b << "," << c << ")";
          return fail(os.str());
        }
  if (!allow_rescale) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (m[u][v] != 0 && m[u][v] < 1)
          return fail("nonzero distance < 1 at (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  std::vector<int> seen(n, -1);
  for (int k = 0; k < inst.num_pairs(); ++k) {
    const Demand& dm = inst.demands()[k];
    if (dm.s < 0 || dm.s >= n || dm.t < 0 || dm.t >= n)
      return fail("demand " + std::to_string(k) + " endpoint out of range");
    if (dm.s == dm.t) return fail("demand " + std::to_string(k) + " joins a vertex to itself");
    for (int v : {dm.s, dm.t}) {
      if (seen[v] >= 0) {
        std::ostringstream os;
        os << "overlapping demands (" << seen[v] << "," << k << ") at vertex " << v;
        return fail(os.str());
      }
      seen[v] = k;
    }
  }
  return {};
}

Normalized normalize(const Instance& inst) {
  Rational lo(0);
  for (const auto& row : inst.dist())
    for (const auto& x : row)
      if (x != 0 && (lo == 0 || x < lo)) lo = x;
  if (lo == 0 || lo >= 1) return {inst, Rational(1)};
  Rational scale = Rational(1) / lo;
  return {inst.scaled(scale), scale};
}

void metric_closure(Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
}

}  // namespace glutton
