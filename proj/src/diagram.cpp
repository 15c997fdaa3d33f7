#include "kdq/diagram.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "kdq/random.hpp"
#include "kdq/states.hpp"

namespace kdq {

const char* to_string(EngineMode mode) noexcept {
  switch (mode) {
    case EngineMode::Exact:
      return "exact";
    case EngineMode::Numeric:
      return "numeric";
    case EngineMode::Both:
      return "both";
  }
  return "?";
}

std::optional<EngineMode> parse_engine_mode(const std::string& s) {
  if (s == "exact") return EngineMode::Exact;
  if (s == "numeric") return EngineMode::Numeric;
  if (s == "both") return EngineMode::Both;
  return std::nullopt;
}

EngineMode default_engine(const TransitionMatrix& u) {
  return u.exact() && u.dim() <= kDefaultExactLimit ? EngineMode::Both : EngineMode::Numeric;
}

const char* to_string(ConditionFailure f) noexcept {
  switch (f) {
    case ConditionFailure::None:
      return "none";
    case ConditionFailure::FullRank:
      return "full-rank";
    case ConditionFailure::RowDependent:
      return "row-dependent";
    case ConditionFailure::ColumnCritical:
      return "column-critical";
  }
  return "?";
}

const char* to_string(PointStatus s) noexcept {
  switch (s) {
    case PointStatus::Present:
      return "present";
    case PointStatus::Hole:
      return "hole";
    case PointStatus::Unknown:
      return "unknown";
  }
  return "?";
}

std::optional<PointStatus> parse_point_status(const std::string& s) {
  if (s == "present") return PointStatus::Present;
  if (s == "hole") return PointStatus::Hole;
  if (s == "unknown") return PointStatus::Unknown;
  return std::nullopt;
}

SubmatrixRank::SubmatrixRank(const TransitionMatrix& u, EngineMode mode, double rank_tol) : mode_(mode) {
  if (mode != EngineMode::Numeric) {
    if (!u.exact()) throw std::invalid_argument("exact engine requested for a pair without exact entries");
    exact_.emplace(*u.exact());
  }
  if (mode != EngineMode::Exact) numeric_.emplace(u.numeric(), rank_tol);
}

std::size_t SubmatrixRank::operator()(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  switch (mode_) {
    case EngineMode::Exact:
      return exact_->rank(rows, cols);
    case EngineMode::Numeric:
      return numeric_->rank(rows, cols);
    case EngineMode::Both: {
      const std::size_t e = exact_->rank(rows, cols);
      if (numeric_->rank(rows, cols) != e) disagreements_.fetch_add(1, std::memory_order_relaxed);
      return e;
    }
  }
  return 0;
}

RankCertificate SubmatrixRank::certificate(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                                           Engine engine) const {
  if (engine == Engine::Exact) {
    if (!exact_) throw std::invalid_argument("exact engine not available in this mode");
    return exact_->certificate(rows, cols);
  }
  if (!numeric_) throw std::invalid_argument("numeric engine not available in this mode");
  return numeric_->certificate(rows, cols);
}

namespace {

IndexList complement(const IndexList& set, std::size_t d) {
  std::vector<bool> in(d, false);
  for (std::size_t i : set) in[i] = true;
  IndexList out;
  for (std::size_t i = 0; i < d; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

void validate_index_set(const IndexList& set, std::size_t d, const char* what) {
  std::vector<bool> seen(d, false);
  for (std::size_t i : set) {
    if (i >= d) throw std::invalid_argument(std::string(what) + " index out of range");
    if (seen[i]) throw std::invalid_argument(std::string(what) + " index repeated");
    seen[i] = true;
  }
}

}  // namespace

ConditionCheck check_submatrix_conditions(const TransitionMatrix& u, const IndexList& rows, const IndexList& cols,
                                          Engine engine, double rank_tol) {
  const std::size_t d = u.dim();
  validate_index_set(rows, d, "row");
  validate_index_set(cols, d, "column");
  if (cols.empty()) throw std::invalid_argument("check_submatrix_conditions: column set is empty");
  if (rows.size() >= d) throw std::invalid_argument("check_submatrix_conditions: row set must leave n_a >= 1");

  const SubmatrixRank ranker(u, engine == Engine::Exact ? EngineMode::Exact : EngineMode::Numeric, rank_tol);
  ConditionCheck out;
  out.base = ranker.certificate(rows, cols, engine);
  const std::size_t rho = out.base.rank;

  IndexList extended = rows;
  extended.push_back(0);
  bool rows_ok = true;
  for (std::size_t k : complement(rows, d)) {
    extended.back() = k;
    const std::size_t rk = ranker(extended, cols);
    out.added_row_ranks.emplace_back(k, rk);
    if (rk != rho + 1) rows_ok = false;
  }
  bool cols_ok = true;
  for (std::size_t drop = 0; drop < cols.size(); ++drop) {
    IndexList reduced;
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (b != drop) reduced.push_back(cols[b]);
    const std::size_t rk = ranker(rows, reduced);
    out.removed_col_ranks.emplace_back(cols[drop], rk);
    if (rk != rho) cols_ok = false;
  }

  if (rho >= cols.size()) {
    out.failure = ConditionFailure::FullRank;
  } else if (!rows_ok) {
    out.failure = ConditionFailure::RowDependent;
  } else if (!cols_ok) {
    out.failure = ConditionFailure::ColumnCritical;
  }
  out.satisfied = out.failure == ConditionFailure::None;
  return out;
}

namespace {

bool next_combination(IndexList& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<IndexList> column_sets(std::size_t d, std::size_t t, bool contain_zero) {
  std::vector<IndexList> out;
  IndexList c(t);
  for (std::size_t i = 0; i < t; ++i) c[i] = i;
  do {
    if (contain_zero && c[0] != 0) break;  // lexicographic order: sets with 0 come first
    out.push_back(c);
  } while (next_combination(c, d));
  return out;
}

struct BudgetExceeded {};

// Row-set search for one fixed column set.
class RowSearch {
 public:
  RowSearch(const SubmatrixRank& rank, std::size_t d, std::size_t r, const IndexList& cols, bool contain_zero,
            std::atomic<std::uint64_t>& spent, std::uint64_t budget)
      : rank_(rank), d_(d), r_(r), t_(cols.size()), cols_(cols), contain_zero_(contain_zero), spent_(spent),
        budget_(budget) {}

  std::optional<IndexList> run() {
    prefix_.clear();
    if (dfs(0, 0)) return prefix_;
    return std::nullopt;
  }

  std::uint64_t visited() const noexcept { return visited_; }

 private:
  std::size_t call(std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    if (budget_ != 0 && spent_.fetch_add(1, std::memory_order_relaxed) >= budget_) throw BudgetExceeded{};
    return rank_(rows, cols);
  }

  // `known` is rank U[prefix, C] when prefix has at least t rows.
  bool dfs(std::size_t next, std::size_t known) {
    ++visited_;
    const std::size_t k = prefix_.size();
    if (k == r_) {
      const std::size_t rho = k >= t_ ? known : (k == 0 ? 0 : call(prefix_, cols_));
      return rho < t_ && leaf_ok(rho);
    }
    for (std::size_t x = next; x + (r_ - k) <= d_; ++x) {
      if (contain_zero_ && k == 0 && x != 0) break;
      prefix_.push_back(x);
      std::size_t rk = 0;
      bool viable = true;
      if (k + 1 >= t_) {
        // rank can only grow with more rows, so a full-rank prefix is dead
        rk = call(prefix_, cols_);
        viable = rk < t_;
      }
      if (viable && dfs(x + 1, rk)) return true;
      prefix_.pop_back();
    }
    return false;
  }

  bool leaf_ok(std::size_t rho) {
    if (!prefix_.empty()) {
      IndexList reduced(t_ - 1);
      for (std::size_t drop = 0; drop < t_; ++drop) {
        for (std::size_t b = 0, o = 0; b < t_; ++b)
          if (b != drop) reduced[o++] = cols_[b];
        if (call(prefix_, reduced) != rho) return false;
      }
    }
    std::vector<bool> in(d_, false);
    for (std::size_t i : prefix_) in[i] = true;
    IndexList extended = prefix_;
    extended.push_back(0);
    for (std::size_t k = 0; k < d_; ++k) {
      if (in[k]) continue;
      extended.back() = k;
      if (call(extended, cols_) != rho + 1) return false;
    }
    return true;
  }

  const SubmatrixRank& rank_;
  std::size_t d_;
  std::size_t r_;
  std::size_t t_;
  const IndexList& cols_;
  bool contain_zero_;
  std::atomic<std::uint64_t>& spent_;
  std::uint64_t budget_;
  IndexList prefix_;
  std::uint64_t visited_ = 0;
};

DiagramPoint search_point(const TransitionMatrix& u, const SubmatrixRank& ranker, unsigned n_a, unsigned n_b,
                          const SearchOptions& options) {
  const std::size_t d = u.dim();
  DiagramPoint point;
  point.n_a = n_a;
  point.n_b = n_b;
  const std::size_t r = d - n_a;
  const bool sym = options.sym_reduce && u.kind() == BasisKind::DFT;
  const std::vector<IndexList> candidates = column_sets(d, n_b, sym);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::atomic<bool> aborted{false};
  std::atomic<std::uint64_t> spent{0};
  std::atomic<std::uint64_t> visited{0};
  std::vector<std::optional<IndexList>> found(candidates.size());
  std::vector<char> finished(candidates.size(), 0);

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.size() || i > best.load() || aborted.load()) return;
      RowSearch search(ranker, d, r, candidates[i], sym, spent, options.max_rank_calls);
      try {
        found[i] = search.run();
      } catch (const BudgetExceeded&) {
        aborted = true;
        visited += search.visited();
        return;
      }
      visited += search.visited();
      finished[i] = 1;
      if (found[i]) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, candidates.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  point.candidates = visited.load();
  const std::size_t b = best.load();
  const bool prefix_done = [&] {
    const std::size_t upto = b == kNone ? candidates.size() : b + 1;
    for (std::size_t i = 0; i < upto; ++i)
      if (!finished[i]) return false;
    return true;
  }();
  if (b != kNone && prefix_done) {
    point.status = PointStatus::Present;
    point.rows = *found[b];
    point.cols = candidates[b];
  } else if (b == kNone && prefix_done && !aborted) {
    point.status = PointStatus::Hole;
  } else {
    point.status = PointStatus::Unknown;
  }
  return point;
}

void validate_point(const TransitionMatrix& u, unsigned n_a, unsigned n_b) {
  const unsigned d = u.dim();
  if (n_a < 1 || n_a > d || n_b < 1 || n_b > d) {
    throw std::invalid_argument("point (" + std::to_string(n_a) + ", " + std::to_string(n_b) +
                                ") is outside the lattice 1.." + std::to_string(d));
  }
}

}  // namespace

DiagramPoint point_exists(const TransitionMatrix& u, unsigned n_a, unsigned n_b, const SearchOptions& options,
                          SearchStats* stats) {
  validate_point(u, n_a, n_b);
  const SubmatrixRank ranker(u, options.engine, options.rank_tol);
  DiagramPoint p = search_point(u, ranker, n_a, n_b, options);
  if (stats) {
    stats->rank_calls += ranker.calls();
    stats->disagreements += ranker.disagreements();
  }
  return p;
}

UncertaintyDiagram::UncertaintyDiagram(unsigned d, EngineMode engine) : d_(d), engine_(engine) {
  points_.resize(static_cast<std::size_t>(d) * d);
  for (unsigned a = 1; a <= d; ++a)
    for (unsigned b = 1; b <= d; ++b) {
      auto& p = at(a, b);
      p.n_a = a;
      p.n_b = b;
    }
}

const DiagramPoint& UncertaintyDiagram::at(unsigned n_a, unsigned n_b) const {
  if (n_a < 1 || n_a > d_ || n_b < 1 || n_b > d_) throw std::out_of_range("UncertaintyDiagram::at");
  return points_[static_cast<std::size_t>(n_a - 1) * d_ + (n_b - 1)];
}

DiagramPoint& UncertaintyDiagram::at(unsigned n_a, unsigned n_b) {
  return const_cast<DiagramPoint&>(std::as_const(*this).at(n_a, n_b));
}

bool UncertaintyDiagram::complete() const {
  return std::none_of(points_.begin(), points_.end(),
                      [](const DiagramPoint& p) { return p.status == PointStatus::Unknown; });
}

std::vector<std::pair<unsigned, unsigned>> UncertaintyDiagram::present_points() const {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (const auto& p : points_)
    if (p.status == PointStatus::Present) out.emplace_back(p.n_a, p.n_b);
  return out;
}

UncertaintyDiagram enumerate_diagram(const TransitionMatrix& u, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned d = u.dim();
  UncertaintyDiagram diagram(d, options.engine);
  diagram.sym_reduce = options.sym_reduce && u.kind() == BasisKind::DFT;
  const SubmatrixRank ranker(u, options.engine, options.rank_tol);
  for (unsigned a = 1; a <= d; ++a)
    for (unsigned b = 1; b <= d; ++b) diagram.at(a, b) = search_point(u, ranker, a, b, options);
  diagram.stats.rank_calls = ranker.calls();
  diagram.stats.disagreements = ranker.disagreements();
  diagram.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return diagram;
}

std::optional<bool> is_completely_incompatible(const UncertaintyDiagram& diagram) {
  const unsigned d = diagram.dim();
  bool unknown = false;
  for (const auto& p : diagram.points()) {
    const bool expected = p.n_a + p.n_b >= d + 1;
    if (p.status == PointStatus::Unknown) {
      unknown = true;
      continue;
    }
    if ((p.status == PointStatus::Present) != expected) return false;
  }
  if (unknown) return std::nullopt;
  return true;
}

StateVector witness_state(const TransitionMatrix& u, const DiagramPoint& point, std::uint64_t seed,
                          double support_eps, unsigned max_attempts) {
  if (point.status != PointStatus::Present || point.cols.empty()) {
    throw std::invalid_argument("witness_state: point has no certificate");
  }
  const IndexList s_set = complement(point.rows, u.dim());
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    StateVector psi = random_state_in_subspace(u, s_set, point.cols, derive_seed(seed, attempt));
    const SupportProfile prof = support_profile(psi, u, support_eps);
    if (prof.n_a == point.n_a && prof.n_b == point.n_b) return psi;
  }
  throw std::runtime_error("witness_state: no draw realised (" + std::to_string(point.n_a) + ", " +
                           std::to_string(point.n_b) + ")");
}

}  // namespace kdq
