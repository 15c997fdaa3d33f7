#include "kdq/predictions.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kdq/random.hpp"
#include "kdq/states.hpp"

namespace kdq {

namespace {

constexpr std::array<std::pair<CheckId, const char*>, 7> kCheckNames{{
    {CheckId::T1, "T1"},
    {CheckId::C1, "C1"},
    {CheckId::T2, "T2"},
    {CheckId::T3, "T3"},
    {CheckId::T4, "T4"},
    {CheckId::T5, "T5"},
    {CheckId::L3, "L3"},
}};

std::vector<unsigned> divisors(unsigned d) {
  std::vector<unsigned> out;
  for (unsigned m = 1; m <= d; ++m)
    if (d % m == 0) out.push_back(m);
  return out;
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::string point_name(unsigned a, unsigned b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

const char* to_string(CheckId id) noexcept {
  for (const auto& [k, name] : kCheckNames)
    if (k == id) return name;
  return "?";
}

std::optional<CheckId> parse_check_id(const std::string& s) {
  for (const auto& [k, name] : kCheckNames)
    if (s == name) return k;
  return std::nullopt;
}

bool nontrivial_divisors_prime(unsigned d) {
  for (unsigned m = 2; m < d; ++m)
    if (d % m == 0 && !is_prime(m)) return false;
  return true;
}

TheoremPrediction predict_progression_points(unsigned d) {
  TheoremPrediction p;
  p.id = CheckId::T1;
  p.d = d;
  for (unsigned m : divisors(d)) {
    for (unsigned n = m; n < d; n += m) {
      for (unsigned nb = n / m + 1; nb <= d / m; ++nb) {
        p.present.emplace(d - n, nb);
        p.present.emplace(nb, d - n);
      }
    }
  }
  for (unsigned i = 1; i <= d; ++i) {
    p.present.emplace(d, i);
    p.present.emplace(i, d);
  }
  return p;
}

TheoremPrediction predict_above_line(unsigned d) {
  TheoremPrediction p;
  p.id = CheckId::C1;
  p.d = d;
  for (unsigned a = 1; a <= d; ++a)
    for (unsigned b = d + 1 - a; b <= d; ++b) p.present.emplace(a, b);
  return p;
}

TheoremPrediction predict_row_two(unsigned d) {
  if (d < 2) throw std::invalid_argument("predict_row_two: d must be at least 2");
  TheoremPrediction p;
  p.id = CheckId::T2;
  p.d = d;
  p.row = 2;
  p.present.emplace(d, 2);
  for (unsigned n : divisors(d))
    if (n != d) p.present.emplace(d - n, 2);
  for (unsigned a = 1; a <= d; ++a)
    if (!p.present.contains({a, 2})) p.holes.emplace(a, 2);
  return p;
}

TheoremPrediction predict_row_three(unsigned d) {
  if (d < 3) throw std::invalid_argument("predict_row_three: d must be at least 3");
  TheoremPrediction p;
  p.id = CheckId::T3;
  p.d = d;
  p.row = 3;
  p.applicable = nontrivial_divisors_prime(d);
  p.present.emplace(d, 3);
  for (unsigned m : divisors(d)) {
    if (3 * m > d) continue;
    p.present.emplace(d - m, 3);
    p.present.emplace(d - 2 * m, 3);
  }
  for (unsigned a = 1; a <= d; ++a)
    if (!p.present.contains({a, 3})) p.holes.emplace(a, 3);
  return p;
}

PredictionComparison compare(const TheoremPrediction& prediction, const UncertaintyDiagram& diagram) {
  if (prediction.d != diagram.dim()) throw std::invalid_argument("compare: dimension mismatch");
  PredictionComparison out;
  for (const auto& [a, b] : prediction.present) {
    const PointStatus s = diagram.status(a, b);
    if (s == PointStatus::Unknown) {
      out.unresolved.emplace(a, b);
    } else if (s != PointStatus::Present) {
      out.missing.emplace(a, b);
    }
  }
  for (const auto& [a, b] : prediction.holes) {
    const PointStatus s = diagram.status(a, b);
    if (s == PointStatus::Unknown) {
      out.unresolved.emplace(a, b);
    } else if (s == PointStatus::Present) {
      out.unexpected.emplace(a, b);
    }
  }
  out.match = out.missing.empty() && out.unexpected.empty() && out.unresolved.empty();
  return out;
}

SuiteResult check_progression_ranks(unsigned d, EngineMode engine) {
  SuiteResult result;
  const TransitionMatrix u = dft_matrix(d);
  const SubmatrixRank rank(u, engine);
  for (unsigned m : divisors(d)) {
    if (m == d) continue;
    const unsigned q = d / m;
    // choice[r] = 0 leaves residue r unused, c > 0 picks column r + (c-1) q
    std::vector<unsigned> choice(q, 0);
    IndexList cols;
    IndexList rows;
    for (;;) {
      std::size_t r = 0;
      while (r < q && choice[r] == m) choice[r++] = 0;
      if (r == q) break;
      ++choice[r];
      cols.clear();
      for (unsigned k = 0; k < q; ++k)
        if (choice[k] != 0) cols.push_back(k + (choice[k] - 1) * q);
      for (unsigned i0 = 0; i0 < d; ++i0) {
        rows.clear();
        for (unsigned t = 1; t <= q; ++t) {
          rows.push_back((i0 + (t - 1) * m) % d);
          ++result.cases;
          const std::size_t expected = std::min<std::size_t>(cols.size(), t);
          const std::size_t got = rank(rows, cols);
          if (got != expected) {
            result.fail("d=" + std::to_string(d) + " m=" + std::to_string(m) + " i0=" + std::to_string(i0) +
                        " t=" + std::to_string(t) + " s=" + std::to_string(cols.size()) + ": rank " +
                        std::to_string(got) + ", expected " + std::to_string(expected));
          }
        }
      }
    }
  }
  if (rank.disagreements() != 0) result.fail("exact and numeric ranks disagree");
  return result;
}

SuiteResult check_coset_states(unsigned d, unsigned shifts, std::uint64_t seed, double classical_eps,
                               double support_eps) {
  SuiteResult result;
  const TransitionMatrix u = dft_matrix(d);
  Rng rng(seed);
  for (unsigned p : divisors(d)) {
    for (unsigned k = 0; k < shifts; ++k) {
      const CosetSpec spec{d, p, static_cast<unsigned>(rng.below(d)), static_cast<unsigned>(rng.below(d))};
      const StateVector psi = coset_classical_state(spec);
      const SupportProfile prof = support_profile(psi, u, support_eps);
      const Classicality c = classify_state(psi, u, classical_eps);
      ++result.cases;
      if (prof.n_a != p || prof.n_b != d / p || c.verdict != Verdict::Classical) {
        result.fail("d=" + std::to_string(d) + " p=" + std::to_string(p) + " shifts (" +
                    std::to_string(spec.a_shift) + ", " + std::to_string(spec.b_shift) + "): profile " +
                    point_name(prof.n_a, prof.n_b) + ", " + to_string(c.verdict));
      }
    }
  }
  return result;
}

SuiteResult check_witness_classicality(const TransitionMatrix& u, const UncertaintyDiagram& diagram,
                                       unsigned samples, std::uint64_t seed, double classical_eps,
                                       double support_eps) {
  if (u.kind() != BasisKind::DFT) throw std::invalid_argument("check_witness_classicality: DFT pair required");
  if (diagram.dim() != u.dim()) throw std::invalid_argument("check_witness_classicality: dimension mismatch");
  SuiteResult result;
  const unsigned d = u.dim();
  std::vector<const DiagramPoint*> above;
  std::vector<const DiagramPoint*> on;
  for (const auto& p : diagram.points()) {
    if (p.status != PointStatus::Present) continue;
    (p.n_a * p.n_b == d ? on : above).push_back(&p);
  }

  std::uint64_t draw = 0;
  auto sample = [&](const DiagramPoint& point) {
    const std::uint64_t s = derive_seed(seed, draw++);
    ++result.cases;
    const std::string where = "d=" + std::to_string(d) + " " + point_name(point.n_a, point.n_b) + " seed " +
                              std::to_string(s);
    try {
      const StateVector psi = witness_state(u, point, s, support_eps);
      const Verdict expected = predict_classicality_dft(support_profile(psi, u, support_eps), u);
      const Classicality c = classify_state(psi, u, classical_eps);
      if (c.verdict != expected) result.fail(where + ": classified " + to_string(c.verdict));
    } catch (const std::exception& e) {
      result.fail(where + ": " + e.what());
    }
  };
  if (!above.empty())
    for (unsigned k = 0; k < samples; ++k) sample(*above[k % above.size()]);
  for (const DiagramPoint* p : on) sample(*p);
  return result;
}

SuiteResult check_half_support(unsigned d, unsigned pairs, unsigned states, std::uint64_t seed, double classical_eps,
                               double support_eps) {
  SuiteResult result;
  std::vector<std::size_t> perm(d);
  for (unsigned pair = 0; pair < pairs; ++pair) {
    const TransitionMatrix u = random_mub_pair(d, derive_seed(seed, 2 * pair));
    Rng rng(derive_seed(seed, 2 * pair + 1));
    auto random_subset = [&](unsigned size) {
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
      IndexList s(perm.begin(), perm.begin() + size);
      std::sort(s.begin(), s.end());
      return s;
    };
    unsigned produced = 0;
    for (unsigned attempt = 0; produced < states && attempt < 20 * states; ++attempt) {
      // one side above d/2, the sum above d so H(S, T) is nonzero
      unsigned big = d / 2 + 1 + static_cast<unsigned>(rng.below(d - d / 2));
      const unsigned low = std::max(2u, d + 1 - big);
      unsigned other = low + static_cast<unsigned>(rng.below(d + 1 - low));
      if (rng.below(2) == 1) std::swap(big, other);
      const IndexList s_set = random_subset(big);
      const IndexList t_set = random_subset(other);
      const StateVector psi = random_state_in_subspace(u, s_set, t_set, rng.below(UINT64_MAX));
      const SupportProfile prof = support_profile(psi, u, support_eps);
      if (prof.n_a <= 1 || prof.n_b <= 1 || !half_support_criterion(prof, u)) continue;
      ++produced;
      ++result.cases;
      const Classicality c = classify_state(psi, u, classical_eps);
      if (c.verdict != Verdict::Nonclassical) {
        result.fail("d=" + std::to_string(d) + " pair " + std::to_string(pair) + " profile " +
                    point_name(prof.n_a, prof.n_b) + " classified Classical");
      }
    }
    if (produced < states) {
      result.fail("d=" + std::to_string(d) + " pair " + std::to_string(pair) + ": only " +
                  std::to_string(produced) + " qualifying states drawn");
    }
  }
  return result;
}

}  // namespace kdq
