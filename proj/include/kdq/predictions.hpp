#pragma once

// Closed-form predictions for the DFT uncertainty diagram and the property
// suites behind `kdq verify`.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "kdq/diagram.hpp"

namespace kdq {

/// Identifiers accepted by `kdq verify`.
enum class CheckId { T1, C1, T2, T3, T4, T5, L3 };

const char* to_string(CheckId id) noexcept;
std::optional<CheckId> parse_check_id(const std::string& s);

using PointSet = std::set<std::pair<unsigned, unsigned>>;

struct TheoremPrediction {
  CheckId id = CheckId::T1;
  unsigned d = 0;
  /// Points claimed Present.
  PointSet present;
  /// For the row predictions: every other point of the row, claimed Hole.
  /// Empty for the subset-only predictions.
  PointSet holes;
  /// Row the prediction is exact on, if any.
  std::optional<unsigned> row;
  /// False when d falls outside the hypothesis under which the prediction
  /// was proved; the sets are still emitted and compared.
  bool applicable = true;
};

/// (d - n, n_b) for m | d, m | n, 0 < n < d and n/m < n_b <= d/m, closed
/// under transposition, together with the border points (d, i) and (i, d).
TheoremPrediction predict_progression_points(unsigned d);

/// Every point with n_a + n_b >= d + 1.
TheoremPrediction predict_above_line(unsigned d);

/// Row n_b = 2: Present exactly at n_a = d - n with n = 0 or n a proper
/// divisor of d. Throws std::invalid_argument for d < 2.
TheoremPrediction predict_row_two(unsigned d);

/// Row n_b = 3: Present exactly at n_a = d and at d - m, d - 2m for every
/// divisor m of d with 3m <= d. Applicable when every nontrivial divisor of
/// d is prime. Throws std::invalid_argument for d < 3.
TheoremPrediction predict_row_three(unsigned d);

/// True when every divisor of d other than 1 and d is prime.
bool nontrivial_divisors_prime(unsigned d);

struct PredictionComparison {
  bool match = true;
  /// Predicted Present, found otherwise.
  PointSet missing;
  /// Predicted Hole, found Present.
  PointSet unexpected;
  /// Points the diagram left Unknown that the prediction constrains.
  PointSet unresolved;
};

PredictionComparison compare(const TheoremPrediction& prediction, const UncertaintyDiagram& diagram);

/// Outcome of a property suite: how many cases ran and which failed.
struct SuiteResult {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }
  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

/// Rows i0, i0 + m, ..., i0 + (t-1)m of the DFT matrix against every column
/// set with pairwise distinct residues mod d/m: rank must be min(s, t).
/// All m | d with m != d, all i0 in Z_d and all 1 <= t <= d/m.
SuiteResult check_progression_ranks(unsigned d, EngineMode engine = EngineMode::Exact);

/// Coset states for every divisor p of d with `shifts` random (a, b) shift
/// pairs each: must classify Classical with n_a * n_b == d.
SuiteResult check_coset_states(unsigned d, unsigned shifts, std::uint64_t seed,
                               double classical_eps = kDefaultClassicalEps, double support_eps = kDefaultSupportEps);

/// `samples` witness states drawn round-robin over the Present points of a
/// DFT diagram. Off the hyperbola each must be Nonclassical; on it each
/// must be Classical.
SuiteResult check_witness_classicality(const TransitionMatrix& u, const UncertaintyDiagram& diagram,
                                       unsigned samples, std::uint64_t seed,
                                       double classical_eps = kDefaultClassicalEps,
                                       double support_eps = kDefaultSupportEps);

/// `pairs` random unbiased pairs, `states` non-basis states each with
/// n_a > d/2 or n_b > d/2: all must be Nonclassical.
SuiteResult check_half_support(unsigned d, unsigned pairs, unsigned states, std::uint64_t seed,
                               double classical_eps = kDefaultClassicalEps, double support_eps = kDefaultSupportEps);

}  // namespace kdq
