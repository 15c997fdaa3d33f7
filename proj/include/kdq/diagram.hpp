#pragma once

// Uncertainty diagram of a basis pair: which support sizes (n_a, n_b) are
// realised by some state.
//
// Membership of (n_a, n_b) is decided by a rank-condition search. A row set
// R (|R| = d - n_a, the A-indices where the state vanishes) and a column set
// C (|C| = n_b, the B-support) certify the point when M = U[R, C] satisfies
//   (i)   rank M < n_b,
//   (ii)  appending any row k outside R raises the rank by one,
//   (iii) deleting any column of M leaves the rank unchanged.
// Condition (ii) is required for every k and (iii) for every column.
// With R empty the conditions reduce to "every row of U[:, C] is nonzero",
// which is the criterion for the points (d, n_b).

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdq/kd.hpp"
#include "kdq/linalg.hpp"

namespace kdq {

enum class EngineMode { Exact, Numeric, Both };

const char* to_string(EngineMode mode) noexcept;
/// Parses "exact", "numeric" or "both".
std::optional<EngineMode> parse_engine_mode(const std::string& s);

/// Both engines (exact rank, numeric cross-check) for d <= 9 when an exact
/// view exists, numeric otherwise.
EngineMode default_engine(const TransitionMatrix& u);

inline constexpr unsigned kDefaultExactLimit = 9;

/// Rank of U[rows, cols] through one or both engines. In Both mode the
/// exact rank is returned and every disagreement is counted.
class SubmatrixRank {
 public:
  SubmatrixRank(const TransitionMatrix& u, EngineMode mode, double rank_tol = kDefaultRankTol);

  std::size_t operator()(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  RankCertificate certificate(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                              Engine engine) const;

  EngineMode mode() const noexcept { return mode_; }
  std::uint64_t calls() const noexcept { return calls_.load(std::memory_order_relaxed); }
  std::uint64_t disagreements() const noexcept { return disagreements_.load(std::memory_order_relaxed); }

 private:
  EngineMode mode_;
  std::optional<ExactRanker> exact_;
  std::optional<NumericRanker> numeric_;
  mutable std::atomic<std::uint64_t> calls_{0};
  mutable std::atomic<std::uint64_t> disagreements_{0};
};

enum class ConditionFailure { None, FullRank, RowDependent, ColumnCritical };

const char* to_string(ConditionFailure f) noexcept;

struct ConditionCheck {
  bool satisfied = false;
  /// First condition that failed, in the order (i), (ii), (iii).
  ConditionFailure failure = ConditionFailure::None;
  /// rank U[rows, cols]
  RankCertificate base;
  /// rank with row k appended, for each k outside `rows` in increasing order.
  std::vector<std::pair<std::size_t, std::size_t>> added_row_ranks;
  /// rank with column c deleted, for each c in `cols`.
  std::vector<std::pair<std::size_t, std::size_t>> removed_col_ranks;
};

/// Evaluates all three conditions on U[rows, cols] with one engine.
/// Throws std::invalid_argument when cols is empty, rows covers all of
/// Z_d, or an index repeats or is out of range.
ConditionCheck check_submatrix_conditions(const TransitionMatrix& u, const IndexList& rows, const IndexList& cols,
                                          Engine engine, double rank_tol = kDefaultRankTol);

enum class PointStatus { Present, Hole, Unknown };

const char* to_string(PointStatus s) noexcept;
std::optional<PointStatus> parse_point_status(const std::string& s);

struct DiagramPoint {
  unsigned n_a = 0;
  unsigned n_b = 0;
  PointStatus status = PointStatus::Unknown;
  /// Certificate of a Present point; empty otherwise.
  IndexList rows;
  IndexList cols;
  /// (R, C) candidates visited; for a Hole this is the full search space
  /// after pruning.
  std::uint64_t candidates = 0;

  friend bool operator==(const DiagramPoint& a, const DiagramPoint& b) {
    return a.n_a == b.n_a && a.n_b == b.n_b && a.status == b.status && a.rows == b.rows && a.cols == b.cols;
  }
};

struct SearchOptions {
  EngineMode engine = EngineMode::Numeric;
  /// DFT only: restrict row and column sets to those containing index 0.
  bool sym_reduce = false;
  double rank_tol = kDefaultRankTol;
  /// Per-point rank-call budget; 0 means unlimited. Exceeding it yields
  /// Unknown, never Hole.
  std::uint64_t max_rank_calls = 0;
  /// Worker threads for a single point search; 0 means hardware concurrency.
  unsigned threads = 1;
};

struct SearchStats {
  std::uint64_t rank_calls = 0;
  std::uint64_t disagreements = 0;
};

/// Decides one lattice point. Column sets are scanned in lexicographic
/// order, row sets in lexicographic order within each; the first certificate
/// found is returned. Throws std::invalid_argument for a point outside
/// 1..d x 1..d or an engine the transition matrix cannot serve.
DiagramPoint point_exists(const TransitionMatrix& u, unsigned n_a, unsigned n_b, const SearchOptions& options,
                          SearchStats* stats = nullptr);

class UncertaintyDiagram {
 public:
  UncertaintyDiagram() = default;
  UncertaintyDiagram(unsigned d, EngineMode engine);

  unsigned dim() const noexcept { return d_; }
  EngineMode engine() const noexcept { return engine_; }

  const DiagramPoint& at(unsigned n_a, unsigned n_b) const;
  DiagramPoint& at(unsigned n_a, unsigned n_b);
  PointStatus status(unsigned n_a, unsigned n_b) const { return at(n_a, n_b).status; }
  /// Points ordered by n_a, then n_b.
  const std::vector<DiagramPoint>& points() const noexcept { return points_; }

  bool complete() const;
  std::vector<std::pair<unsigned, unsigned>> present_points() const;

  bool sym_reduce = false;
  SearchStats stats;
  double seconds = 0.0;

  friend bool operator==(const UncertaintyDiagram& a, const UncertaintyDiagram& b) {
    return a.d_ == b.d_ && a.engine_ == b.engine_ && a.points_ == b.points_;
  }

 private:
  unsigned d_ = 0;
  EngineMode engine_ = EngineMode::Numeric;
  std::vector<DiagramPoint> points_;
};

UncertaintyDiagram enumerate_diagram(const TransitionMatrix& u, const SearchOptions& options);

/// True iff the diagram is exactly the half plane n_a + n_b >= d + 1;
/// nullopt when Unknown points leave the answer open.
std::optional<bool> is_completely_incompatible(const UncertaintyDiagram& diagram);

/// Random state realising a Present point, drawn from the subspace named
/// by its certificate and checked against the required support sizes.
/// Throws std::invalid_argument for a point without certificate and
/// std::runtime_error when no draw matches after `max_attempts`.
StateVector witness_state(const TransitionMatrix& u, const DiagramPoint& point, std::uint64_t seed,
                          double support_eps = kDefaultSupportEps, unsigned max_attempts = 64);

}  // namespace kdq
