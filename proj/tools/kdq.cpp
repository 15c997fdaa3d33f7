// kdq: uncertainty diagrams and KD classicality of the DFT basis pair.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 resource abort (undecided points).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdq/diagram.hpp"
#include "kdq/io.hpp"
#include "kdq/kd.hpp"
#include "kdq/plot.hpp"
#include "kdq/predictions.hpp"
#include "kdq/random.hpp"

namespace {

using namespace kdq;
using ordered_json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kAbort = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dims = "6";
  std::string engine = "auto";
  bool sym_reduce = false;
  double eps_support = kDefaultSupportEps;
  double eps_classical = kDefaultClassicalEps;
  double rank_tol = kDefaultRankTol;
  std::uint64_t seed = 1;
  std::string out;
  std::string svg;
  std::string csv;
  bool allow_partial = false;
  unsigned threads = 1;
  std::uint64_t budget = 0;
  std::string cache_dir;
  unsigned samples = 0;
  unsigned pairs = 100;
  unsigned na = 0;
  unsigned nb = 0;
  std::string state;
  std::string check;
};

struct DimRange {
  unsigned lo;
  unsigned hi;
};

DimRange parse_dims(const std::string& s) {
  auto number = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 4) {
      throw UsageError("--d expects N or A..B, got '" + s + "'");
    }
    return static_cast<unsigned>(std::stoul(t));
  };
  DimRange r{};
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    r = {number(s.substr(0, dots)), number(s.substr(dots + 2))};
  } else {
    r.lo = r.hi = number(s);
  }
  if (r.lo == 0 || r.hi < r.lo) throw UsageError("--d range must satisfy 1 <= A <= B");
  return r;
}

unsigned single_dim(const RunConfig& cfg) {
  const DimRange r = parse_dims(cfg.dims);
  if (r.lo != r.hi) throw UsageError("this command takes a single dimension");
  return r.lo;
}

EngineMode engine_for(const RunConfig& cfg, const TransitionMatrix& u) {
  if (cfg.engine == "auto") return default_engine(u);
  return *parse_engine_mode(cfg.engine);
}

SearchOptions search_options(const RunConfig& cfg, const TransitionMatrix& u) {
  SearchOptions o;
  o.engine = engine_for(cfg, u);
  o.sym_reduce = cfg.sym_reduce;
  o.rank_tol = cfg.rank_tol;
  o.max_rank_calls = cfg.budget;
  o.threads = cfg.threads;
  return o;
}

std::size_t count(const UncertaintyDiagram& g, PointStatus s) {
  std::size_t n = 0;
  for (const auto& p : g.points()) n += p.status == s;
  return n;
}

UncertaintyDiagram obtain_diagram(const RunConfig& cfg, const TransitionMatrix& u) {
  const SearchOptions o = search_options(cfg, u);
  if (!cfg.cache_dir.empty() && cfg.budget == 0) {
    if (auto cached = load_cached_diagram(cfg.cache_dir, u.dim(), o.engine, o.rank_tol, o.sym_reduce)) {
      std::cerr << "d=" << u.dim() << ": diagram loaded from cache\n";
      return *cached;
    }
  }
  UncertaintyDiagram g = enumerate_diagram(u, o);
  std::fprintf(stderr, "d=%u engine=%s present=%zu hole=%zu unknown=%zu rank_calls=%llu %.2fs\n", u.dim(),
               to_string(g.engine()), count(g, PointStatus::Present), count(g, PointStatus::Hole),
               count(g, PointStatus::Unknown), static_cast<unsigned long long>(g.stats.rank_calls), g.seconds);
  if (g.stats.disagreements != 0) {
    std::cerr << "d=" << u.dim() << ": " << g.stats.disagreements << " exact/numeric rank disagreements\n";
  }
  if (!cfg.cache_dir.empty() && cfg.budget == 0 && g.complete() && g.stats.disagreements == 0) {
    store_cached_diagram(cfg.cache_dir, g, o.rank_tol);
  }
  return g;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_diagram(const RunConfig& cfg) {
  const unsigned d = single_dim(cfg);
  const TransitionMatrix u = dft_matrix(d);
  const UncertaintyDiagram g = obtain_diagram(cfg, u);
  emit(cfg.out, diagram_to_json(g));
  if (!cfg.csv.empty()) emit(cfg.csv, render_csv(g));
  if (!cfg.svg.empty()) {
    emit(cfg.svg, render_svg(d, plot_markers(u, g, cfg.seed, cfg.eps_support, cfg.eps_classical)));
  }
  if (g.stats.disagreements != 0) return kMismatch;
  if (!g.complete() && !cfg.allow_partial) {
    std::cerr << "diagram incomplete: " << count(g, PointStatus::Unknown)
              << " points undecided (raise --budget or pass --allow-partial)\n";
    return kAbort;
  }
  return kOk;
}

ordered_json classification_report(const StateVector& psi, const TransitionMatrix& u, const RunConfig& cfg) {
  const SupportProfile prof = support_profile(psi, u, cfg.eps_support);
  const Classicality c = classify_state(psi, u, cfg.eps_classical);
  ordered_json j;
  j["d"] = u.dim();
  j["n_a"] = prof.n_a;
  j["n_b"] = prof.n_b;
  j["product"] = prof.n_a * prof.n_b;
  j["verdict"] = to_string(c.verdict);
  if (c.witness) {
    j["witness"] = {{"i", c.witness->i}, {"j", c.witness->j}, {"q", {c.witness->q.real(), c.witness->q.imag()}}};
  } else {
    j["witness"] = nullptr;
  }
  try {
    j["theorem4_prediction"] = to_string(predict_classicality_dft(prof, u));
  } catch (const std::domain_error& e) {
    std::cerr << "warning: " << e.what() << "\n";
    j["theorem4_prediction"] = nullptr;
  }
  try {
    j["theorem5_flag"] = half_support_criterion(prof, u);
  } catch (const std::domain_error&) {
    j["theorem5_flag"] = nullptr;
  }
  return j;
}

int cmd_classify(const RunConfig& cfg, bool d_given) {
  LoadedState loaded = [&] {
    try {
      return state_from_json(read_text_file(cfg.state));
    } catch (const std::exception& e) {
      throw UsageError(cfg.state + ": " + e.what());
    }
  }();
  if (loaded.renormalized) {
    std::fprintf(stderr, "warning: amplitudes had norm %.9g; normalised\n", loaded.state.input_norm());
  }
  const unsigned d = loaded.state.dim();
  if (d_given && single_dim(cfg) != d) {
    throw UsageError("state has d = " + std::to_string(d) + " but --d " + cfg.dims + " was given");
  }
  std::cout << classification_report(loaded.state, dft_matrix(d), cfg).dump(2) << "\n";
  return kOk;
}

int cmd_witness(const RunConfig& cfg) {
  const unsigned d = single_dim(cfg);
  if (cfg.na < 1 || cfg.na > d || cfg.nb < 1 || cfg.nb > d) {
    throw UsageError("--na and --nb must lie in 1.." + std::to_string(d));
  }
  const TransitionMatrix u = dft_matrix(d);
  const DiagramPoint p = point_exists(u, cfg.na, cfg.nb, search_options(cfg, u));
  if (p.status == PointStatus::Hole) {
    std::cerr << "(" << cfg.na << ", " << cfg.nb << ") is a hole: no state has these supports\n";
    return kMismatch;
  }
  if (p.status == PointStatus::Unknown) {
    std::cerr << "(" << cfg.na << ", " << cfg.nb << ") undecided within the rank-call budget\n";
    return kAbort;
  }
  const StateVector psi = witness_state(u, p, cfg.seed, cfg.eps_support);
  const std::string report = classification_report(psi, u, cfg).dump(2) + "\n";
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << state_to_json(psi);
    std::cerr << report;
  } else {
    write_text_file(cfg.out, state_to_json(psi));
    std::cout << report;
  }
  return kOk;
}

std::string describe(const PointSet& s) {
  std::string out;
  for (const auto& [a, b] : s) out += (out.empty() ? "" : " ") + ("(" + std::to_string(a) + "," + std::to_string(b) + ")");
  return out;
}

void row(CheckId id, unsigned d, const std::string& result, const std::string& detail) {
  std::printf("%-3s d=%-3u %-5s %s\n", to_string(id), d, result.c_str(), detail.c_str());
}

int cmd_verify(const RunConfig& cfg) {
  const auto id = parse_check_id(cfg.check);
  if (!id) throw UsageError("unknown check '" + cfg.check + "' (expected T1, C1, T2, T3, T4, T5 or L3)");
  const DimRange range = parse_dims(cfg.dims);
  bool all_ok = true;
  bool aborted = false;

  for (unsigned d = range.lo; d <= range.hi; ++d) {
    const TransitionMatrix u = dft_matrix(d);
    switch (*id) {
      case CheckId::T1:
      case CheckId::C1:
      case CheckId::T2:
      case CheckId::T3: {
        if ((*id == CheckId::T2 && d < 2) || (*id == CheckId::T3 && d < 3)) {
          row(*id, d, "skip", "needs larger d");
          continue;
        }
        const UncertaintyDiagram g = obtain_diagram(cfg, u);
        const TheoremPrediction pred = *id == CheckId::T1   ? predict_progression_points(d)
                                       : *id == CheckId::C1 ? predict_above_line(d)
                                       : *id == CheckId::T2 ? predict_row_two(d)
                                                            : predict_row_three(d);
        const PredictionComparison c = compare(pred, g);
        std::string detail = std::to_string(pred.present.size()) + " predicted present";
        if (!c.missing.empty()) detail += "; missing " + describe(c.missing);
        if (!c.unexpected.empty()) detail += "; unexpected " + describe(c.unexpected);
        if (!c.unresolved.empty()) detail += "; undecided " + describe(c.unresolved);
        if (!pred.applicable) detail += "; d outside the divisor hypothesis, compared empirically";
        if (g.stats.disagreements != 0) {
          detail += "; engine disagreements " + std::to_string(g.stats.disagreements);
          all_ok = false;
        }
        if (!c.unresolved.empty()) aborted = true;
        const bool fatal = !c.missing.empty() || !c.unexpected.empty();
        if (fatal && pred.applicable) all_ok = false;
        row(*id, d, c.match ? "pass" : (fatal ? "FAIL" : "undec"), detail);
        break;
      }
      case CheckId::T4: {
        const SuiteResult coset = check_coset_states(d, 20, derive_seed(cfg.seed, d), cfg.eps_classical,
                                                     cfg.eps_support);
        const UncertaintyDiagram g = obtain_diagram(cfg, u);
        const SuiteResult wit = check_witness_classicality(u, g, cfg.samples ? cfg.samples : 1000,
                                                           derive_seed(cfg.seed, 1000 + d), cfg.eps_classical,
                                                           cfg.eps_support);
        const bool ok = coset.passed() && wit.passed();
        all_ok = all_ok && ok;
        std::string detail = std::to_string(coset.cases) + " coset states, " + std::to_string(wit.cases) +
                             " witness states, " + std::to_string(coset.failures + wit.failures) +
                             " counterexamples";
        if (!ok) detail += "; first: " + (coset.passed() ? wit.first_failure : coset.first_failure);
        row(*id, d, ok ? "pass" : "FAIL", detail);
        break;
      }
      case CheckId::T5: {
        if (d < 2) {
          row(*id, d, "skip", "needs d >= 2");
          continue;
        }
        const SuiteResult r = check_half_support(d, cfg.pairs, cfg.samples ? cfg.samples : 100,
                                                 derive_seed(cfg.seed, 2000 + d), cfg.eps_classical, cfg.eps_support);
        all_ok = all_ok && r.passed();
        std::string detail = std::to_string(cfg.pairs) + " pairs, " + std::to_string(r.cases) + " states, " +
                             std::to_string(r.failures) + " counterexamples";
        if (!r.passed()) detail += "; first: " + r.first_failure;
        row(*id, d, r.passed() ? "pass" : "FAIL", detail);
        break;
      }
      case CheckId::L3: {
        if (d < 2) {
          row(*id, d, "skip", "no proper divisor progressions");
          continue;
        }
        const SuiteResult r = check_progression_ranks(d, engine_for(cfg, u));
        all_ok = all_ok && r.passed();
        std::string detail = std::to_string(r.cases) + " submatrices, " + std::to_string(r.failures) + " failures";
        if (!r.passed()) detail += "; first: " + r.first_failure;
        row(*id, d, r.passed() ? "pass" : "FAIL", detail);
        break;
      }
    }
    std::fflush(stdout);
  }
  if (!all_ok) return kMismatch;
  return aborted && !cfg.allow_partial ? kAbort : kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--engine", cfg.engine, "Rank engine: exact, numeric, both or auto")
      ->check(CLI::IsMember({"auto", "exact", "numeric", "both"}));
  sub->add_flag("--sym-reduce", cfg.sym_reduce, "Only search row and column sets containing 0");
  sub->add_option("--eps-support", cfg.eps_support, "Relative zero threshold for supports")
      ->check(CLI::PositiveNumber);
  sub->add_option("--eps-classical", cfg.eps_classical, "Tolerance of the classicality test")
      ->check(CLI::PositiveNumber);
  sub->add_option("--rank-tol", cfg.rank_tol, "Relative singular-value cutoff")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Seed for every random draw");
  sub->add_option("--threads", cfg.threads, "Worker threads per point search (0: all cores)");
  sub->add_option("--budget", cfg.budget, "Rank-call budget per point (0: unlimited)");
  sub->add_option("--cache-dir", cfg.cache_dir, "Directory for cached diagrams");
  sub->add_flag("--allow-partial", cfg.allow_partial, "Exit 0 even when points stay undecided");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirkwood-Dirac classicality and uncertainty diagrams of the DFT basis pair"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* diagram = app.add_subcommand("diagram", "Enumerate the uncertainty diagram of one dimension");
  diagram->add_option("--d", cfg.dims, "Dimension")->required();
  diagram->add_option("--out", cfg.out, "Diagram JSON path (default stdout)");
  diagram->add_option("--csv", cfg.csv, "CSV path");
  diagram->add_option("--svg", cfg.svg, "SVG path");
  add_common(diagram, cfg);

  auto* classify = app.add_subcommand("classify", "Classify a state given as JSON");
  classify->add_option("state", cfg.state, "State file {\"d\": int, \"amps_a\": [[re, im], ...]}")->required();
  auto* classify_d = classify->add_option("--d", cfg.dims, "Expected dimension");
  add_common(classify, cfg);

  auto* verify = app.add_subcommand("verify", "Check a prediction or property suite over a range of d");
  verify->add_option("check", cfg.check, "T1, C1, T2, T3, T4, T5 or L3")->required();
  verify->add_option("--d", cfg.dims, "Dimension N or range A..B")->required();
  verify->add_option("--samples", cfg.samples, "States per d (T4, default 1000) or per pair (T5, default 100)");
  verify->add_option("--pairs", cfg.pairs, "Random unbiased pairs per d (T5)");
  add_common(verify, cfg);

  auto* witness = app.add_subcommand("witness", "Produce a state with prescribed support sizes");
  witness->add_option("--d", cfg.dims, "Dimension")->required();
  witness->add_option("--na", cfg.na, "A-support size")->required();
  witness->add_option("--nb", cfg.nb, "B-support size")->required();
  witness->add_option("--out", cfg.out, "State JSON path (default stdout)");
  add_common(witness, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*diagram) return cmd_diagram(cfg);
    if (*classify) return cmd_classify(cfg, classify_d->count() > 0);
    if (*verify) return cmd_verify(cfg);
    if (*witness) return cmd_witness(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAbort;
  }
  return kUsage;
}
