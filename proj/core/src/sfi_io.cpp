#include "glutton/sfi_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace glutton {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-empty line with comments stripped, split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect(const char* what) {
    std::vector<std::string> t;
    if (!next(t)) throw SfiError(line_no, std::string("unexpected end of file, expected ") + what);
    return t;
  }
};

Rational rat(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const std::exception& e) {
    throw SfiError(line, e.what());
  }
}

int integer(const std::string& tok, int line) {
  Rational r = rat(tok, line);
  if (r.denominator() != 1) throw SfiError(line, "expected an integer, got '" + tok + "'");
  return static_cast<int>(r.numerator());
}

std::int64_t isqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

Rational sqrt_up(const Rational& x) {
  if (x < 0) throw std::invalid_argument("sqrt of negative");
  std::int64_t p = x.numerator(), q = x.denominator();
  std::int64_t rp = isqrt(p), rq = isqrt(q);
  if (rp * rp == p && rq * rq == q) return Rational(rp, rq);
  long double v = std::sqrt(static_cast<long double>(p) / static_cast<long double>(q));
  auto micro = static_cast<std::int64_t>(std::ceil(v * 1000000.0L));
  // guard against rounding down in floating point
  while (Rational(micro, 1000000) * Rational(micro, 1000000) < x) ++micro;
  return Rational(micro, 1000000);
}

Instance parse_sfi(std::istream& in) {
  LineReader rd{in};
  auto t = rd.expect("header");
  if (t.size() != 2 || t[0] != "sfi" || t[1] != "1") throw SfiError(rd.line_no, "expected header 'sfi 1'");
  t = rd.expect("mode line");
  if (t.size() != 2 || t[0] != "mode" || (t[1] != "matrix" && t[1] != "coords2d"))
    throw SfiError(rd.line_no, "expected 'mode matrix' or 'mode coords2d'");
  const bool coords = t[1] == "coords2d";
  t = rd.expect("'n <count>'");
  if (t.size() != 2 || t[0] != "n") throw SfiError(rd.line_no, "expected 'n <count>'");
  const int n = integer(t[1], rd.line_no);
  if (n < 1) throw SfiError(rd.line_no, "vertex count must be positive");

  Matrix m(n, std::vector<Rational>(n));
  if (coords) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int i = 0; i < n; ++i) {
      t = rd.expect("coordinate row");
      if (t.size() != 2) throw SfiError(rd.line_no, "coordinate row needs 2 values");
      pts.emplace_back(rat(t[0], rd.line_no), rat(t[1], rd.line_no));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
        m[i][j] = sqrt_up(dx * dx + dy * dy);
      }
    metric_closure(m);  // rounding up may break the triangle inequality
  } else {
    for (int i = 0; i < n; ++i) {
      t = rd.expect("matrix row");
      if (static_cast<int>(t.size()) != n)
        throw SfiError(rd.line_no, "matrix row has " + std::to_string(t.size()) + " entries, expected " +
                                       std::to_string(n));
      for (int j = 0; j < n; ++j) m[i][j] = rat(t[j], rd.line_no);
    }
  }
  t = rd.expect("'demands <k>'");
  if (t.size() != 2 || t[0] != "demands") throw SfiError(rd.line_no, "expected 'demands <k>'");
  const int k = integer(t[1], rd.line_no);
  if (k < 0) throw SfiError(rd.line_no, "negative demand count");
  std::vector<Demand> demands;
  for (int i = 0; i < k; ++i) {
    t = rd.expect("demand line");
    if (t.size() != 2) throw SfiError(rd.line_no, "demand line needs 'u v'");
    Demand dm{integer(t[0], rd.line_no), integer(t[1], rd.line_no)};
    if (dm.s < 0 || dm.s >= n || dm.t < 0 || dm.t >= n) throw SfiError(rd.line_no, "demand endpoint out of range");
    demands.push_back(dm);
  }
  if (rd.next(t)) throw SfiError(rd.line_no, "trailing content after demands");

  Instance inst(std::move(m), std::move(demands));
  if (auto rep = validate(inst, true); !rep) throw SfiError(0, rep.message);
  return inst;
}

Instance load_sfi(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SfiError(0, "cannot open '" + path + "'");
  return parse_sfi(in);
}

void write_sfi(const Instance& inst, std::ostream& out) {
  out << "sfi 1\nmode matrix\nn " << inst.num_vertices() << "\n";
  for (int i = 0; i < inst.num_vertices(); ++i) {
    for (int j = 0; j < inst.num_vertices(); ++j) out << (j ? " " : "") << to_string(inst.d(i, j));
    out << "\n";
  }
  out << "demands " << inst.num_pairs() << "\n";
  for (const auto& dm : inst.demands()) out << dm.s << " " << dm.t << "\n";
}

void save_sfi(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SfiError(0, "cannot write '" + path + "'");
  write_sfi(inst, out);
}

}  // namespace glutton
