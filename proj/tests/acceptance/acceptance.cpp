// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kdq/diagram.hpp"
#include "kdq/plot.hpp"
#include "kdq/predictions.hpp"
#include "kdq/random.hpp"
#include "oracles.hpp"

using namespace kdq;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

struct Timed {
  UncertaintyDiagram diagram;
  double seconds;
};

const Timed& dft_diagram(unsigned d) {
  static std::map<unsigned, Timed> cache;
  auto it = cache.find(d);
  if (it == cache.end()) {
    const TransitionMatrix u = dft_matrix(d);
    SearchOptions o;
    o.engine = default_engine(u);
    const auto t0 = Clock::now();
    UncertaintyDiagram g = enumerate_diagram(u, o);
    it = cache.emplace(d, Timed{std::move(g), since(t0)}).first;
  }
  return it->second;
}

std::set<std::pair<unsigned, unsigned>> hyperbola(unsigned d) {
  std::set<std::pair<unsigned, unsigned>> out;
  for (unsigned a = 1; a <= d; ++a)
    if (d % a == 0) out.emplace(a, d / a);
  return out;
}

std::set<unsigned> row_present(const UncertaintyDiagram& g, unsigned nb) {
  std::set<unsigned> out;
  for (unsigned a = 1; a <= g.dim(); ++a)
    if (g.status(a, nb) == PointStatus::Present) out.insert(a);
  return out;
}

std::set<unsigned> row_two_rule(unsigned d) {
  std::set<unsigned> out{d};
  for (unsigned n = 1; n < d; ++n)
    if (d % n == 0) out.insert(d - n);
  return out;
}

std::set<unsigned> row_three_rule(unsigned d) {
  std::set<unsigned> out{d};
  for (unsigned m = 1; 3 * m <= d; ++m)
    if (d % m == 0) {
      out.insert(d - m);
      out.insert(d - 2 * m);
    }
  return out;
}

bool divisors_prime(unsigned d) {
  for (unsigned m = 2; m < d; ++m) {
    if (d % m) continue;
    for (unsigned k = 2; k * k <= m; ++k)
      if (m % k == 0) return false;
  }
  return true;
}

std::string fmt_time(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

void figure_points() {
  bool ok = true;
  std::string detail;
  for (unsigned d : {6u, 8u, 9u, 10u}) {
    const TransitionMatrix u = dft_matrix(d);
    const Timed& t = dft_diagram(d);
    const UncertaintyDiagram& g = t.diagram;
    bool d_ok = g.complete();

    std::set<std::pair<unsigned, unsigned>> classical;
    for (const auto& m : plot_markers(u, g, 1))
      if (m.marker == Marker::Classical) classical.emplace(m.n_a, m.n_b);
    d_ok = d_ok && classical == hyperbola(d);

    for (unsigned a = 1; a <= d; ++a)
      for (unsigned b = 1; b <= d; ++b)
        if (a + b >= d + 1) d_ok = d_ok && g.status(a, b) == PointStatus::Present;
    d_ok = d_ok && row_present(g, 2) == row_two_rule(d) && row_present(g, 3) == row_three_rule(d);
    if (d == 8) d_ok = d_ok && g.status(5, 2) == PointStatus::Hole;
    if (d == 9) d_ok = d_ok && g.status(5, 3) == PointStatus::Hole && g.status(4, 3) == PointStatus::Hole;
    if (d == 6)
      for (unsigned a = 3; a <= 6; ++a) d_ok = d_ok && g.status(a, 2) == PointStatus::Present;

    ok = ok && d_ok;
    detail += (detail.empty() ? "" : ", ") + ("d=" + std::to_string(d) + " " + to_string(g.engine()) + " " +
                                              fmt_time(t.seconds) + (d_ok ? "" : " MISMATCH"));
  }
  report(1, ok, "DFT diagrams for d = 6, 8, 9, 10 show the determined classical points and holes", detail);
}

void half_plane() {
  bool ok = true;
  std::string bad;
  for (unsigned d = 1; d <= 12; ++d) {
    const UncertaintyDiagram& g = dft_diagram(d).diagram;
    const bool d_ok = compare(predict_above_line(d), g).match;
    bool direct = true;
    for (unsigned a = 1; a <= d; ++a)
      for (unsigned b = d + 1 - a; b <= d; ++b) direct = direct && g.status(a, b) == PointStatus::Present;
    if (!(d_ok && direct)) bad += " d=" + std::to_string(d);
    ok = ok && d_ok && direct;
  }
  report(2, ok, "every point with n_a + n_b >= d + 1 is present for d <= 12",
         ok ? "d = 1..12 match" : "mismatch at" + bad);
}

void row_two() {
  bool ok = true;
  std::string bad;
  for (unsigned d = 2; d <= 12; ++d) {
    const UncertaintyDiagram& g = dft_diagram(d).diagram;
    const bool d_ok = row_present(g, 2) == row_two_rule(d) && compare(predict_row_two(d), g).match;
    if (!d_ok) bad += " d=" + std::to_string(d);
    ok = ok && d_ok;
  }
  report(3, ok, "row n_b = 2 equals {d - n : n = 0 or n a proper divisor of d} for d = 2..12",
         ok ? "11 rows match" : "mismatch at" + bad);
}

void row_three() {
  bool ok = true;
  std::string detail;
  std::string outside;
  for (unsigned d = 3; d <= 12; ++d) {
    const UncertaintyDiagram& g = dft_diagram(d).diagram;
    const TheoremPrediction p = predict_row_three(d);
    const bool d_ok = row_present(g, 3) == row_three_rule(d) && compare(p, g).match;
    if (p.applicable != divisors_prime(d)) ok = false;
    if (!p.applicable) outside += (outside.empty() ? " d=" : ", d=") + std::to_string(d) + (d_ok ? " agrees" : " differs");
    if (!d_ok) detail += " d=" + std::to_string(d);
    ok = ok && d_ok;
  }
  report(4, ok, "row n_b = 3 matches the divisor rule for d = 3..12",
         (ok ? std::string("10 rows match") : "mismatch at" + detail) + "; outside the prime-divisor hypothesis:" +
             outside);
}

void classicality_suite() {
  bool ok = true;
  std::uint64_t cosets = 0;
  std::uint64_t witnesses = 0;
  std::uint64_t bad = 0;
  std::string first;
  for (unsigned d = 1; d <= 12; ++d) {
    const SuiteResult c = check_coset_states(d, 20, derive_seed(41, d), 1e-10);
    const TransitionMatrix u = dft_matrix(d);
    const SuiteResult w = check_witness_classicality(u, dft_diagram(d).diagram, 1000, derive_seed(42, d), 1e-10);
    cosets += c.cases;
    witnesses += w.cases;
    bad += c.failures + w.failures;
    if (first.empty() && !c.passed()) first = c.first_failure;
    if (first.empty() && !w.passed()) first = w.first_failure;
    ok = ok && c.passed() && w.passed() && c.cases >= 20;
  }
  report(5, ok, "coset states are classical on the hyperbola, witness states off it are nonclassical, d <= 12",
         std::to_string(cosets) + " coset states, " + std::to_string(witnesses) + " witness states, " +
             std::to_string(bad) + " counterexamples" + (first.empty() ? "" : "; first: " + first));
}

void half_support() {
  bool ok = true;
  std::uint64_t states = 0;
  std::uint64_t bad = 0;
  std::string first;
  for (unsigned d = 2; d <= 10; ++d) {
    const SuiteResult r = check_half_support(d, 100, 100, derive_seed(51, d));
    states += r.cases;
    bad += r.failures;
    if (first.empty() && !r.passed()) first = r.first_failure;
    ok = ok && r.passed() && r.cases == 100 * 100;
  }
  report(6, ok, "states with a support above d/2 are nonclassical for random unbiased pairs, d = 2..10",
         std::to_string(states) + " states over 900 pairs, " + std::to_string(bad) + " counterexamples" +
             (first.empty() ? "" : "; first: " + first));
}

void progression_ranks() {
  bool ok = true;
  std::uint64_t cases = 0;
  std::string first;
  const auto t0 = Clock::now();
  for (unsigned d = 1; d <= 12; ++d) {
    const SuiteResult r = check_progression_ranks(d, EngineMode::Exact);
    cases += r.cases;
    if (first.empty() && !r.passed()) first = r.first_failure;
    ok = ok && r.passed();
  }
  report(7, ok, "arithmetic-progression row sets have rank min(s, t) against distinct-residue columns, d <= 12",
         std::to_string(cases) + " submatrices, exact arithmetic, " + fmt_time(since(t0)) +
             (first.empty() ? "" : "; first: " + first));
}

void sampling_oracle() {
  bool ok = true;
  std::string detail;
  const auto t0 = Clock::now();
  for (unsigned d = 1; d <= 6; ++d) {
    const auto sampled = oracle::sampled_diagram(d, 100000, derive_seed(61, d));
    const auto v = dft_diagram(d).diagram.present_points();
    const std::set<std::pair<unsigned, unsigned>> found(v.begin(), v.end());
    if (found != sampled) detail += " d=" + std::to_string(d);
    ok = ok && found == sampled;
  }
  report(8, ok, "rank-condition diagrams equal random-sampling diagrams for d <= 6",
         (ok ? std::string("10^5 samples per (S, T), all present sets equal") : "mismatch at" + detail) + ", " +
             fmt_time(since(t0)));
}

void engine_agreement() {
  SearchOptions o;
  o.engine = EngineMode::Both;
  const TransitionMatrix u = dft_matrix(8);
  const UncertaintyDiagram g = enumerate_diagram(u, o);

  // every submatrix of F_8, both engines
  const ExactRanker exact(*u.exact());
  const NumericRanker numeric(u.numeric());
  std::uint64_t calls = 0;
  std::uint64_t disagreements = 0;
  for (unsigned rm = 1; rm < 256; ++rm) {
    IndexList rows;
    for (unsigned i = 0; i < 8; ++i)
      if (rm >> i & 1u) rows.push_back(i);
    for (unsigned cm = 1; cm < 256; ++cm) {
      IndexList cols;
      for (unsigned j = 0; j < 8; ++j)
        if (cm >> j & 1u) cols.push_back(j);
      disagreements += exact.rank(rows, cols) != numeric.rank(rows, cols);
      ++calls;
    }
  }
  const bool ok = g.complete() && g.stats.disagreements == 0 && disagreements == 0;
  report(9, ok, "exact and numeric ranks agree across a d = 8 enumeration",
         std::to_string(g.stats.rank_calls) + " paired rank calls in the search, " +
             std::to_string(g.stats.disagreements) + " disagreements; " + std::to_string(calls) +
             " paired calls over all submatrices, " + std::to_string(disagreements) + " disagreements");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("kdq-accept-" + std::to_string(rd()));
  fs::create_directories(dir);
  bool ok = true;
  for (const char* tag : {"a", "b"}) {
    const std::string base = (dir / tag).string();
    const std::string cmd = std::string(KDQ_BIN) + " diagram --d 9 --seed 7 --out " + base + ".json --csv " + base +
                            ".csv --svg " + base + ".svg 2>/dev/null";
    const int status = std::system(cmd.c_str());
    ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  std::string detail;
  for (const char* ext : {".json", ".csv", ".svg"}) {
    const std::string a = slurp(dir / (std::string("a") + ext));
    const std::string b = slurp(dir / (std::string("b") + ext));
    const bool same = !a.empty() && a == b;
    detail += std::string(detail.empty() ? "" : ", ") + ext + (same ? " identical" : " DIFFERS") + " (" +
              std::to_string(a.size()) + " bytes)";
    ok = ok && same;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(10, ok, "two runs of `diagram --d 9 --seed 7` are byte-identical", detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  figure_points();
  half_plane();
  row_two();
  row_three();
  classicality_suite();
  half_support();
  progression_ranks();
  sampling_oracle();
  engine_agreement();
  determinism();
  std::printf("%d of 10 criteria passed in %s\n", 10 - failures, fmt_time(since(t0)).c_str());
  return failures == 0 ? 0 : 1;
}
