#pragma once

// Matrices over Q(w_d) or C, submatrix extraction, rank and nullspace.
//
// Two rank engines are provided. The exact engine runs fraction-free
// (Bareiss) elimination over the ring of integers of Q(w_d); its zero test
// is reduction modulo Phi_d. The numeric engine counts singular values
// above tol * sigma_max * max(rows, cols).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "kdq/cyclotomic.hpp"

namespace kdq {

enum class Engine { Exact, Numeric };

const char* to_string(Engine engine) noexcept;

inline constexpr double kDefaultRankTol = 1e-10;

using IndexList = std::vector<std::size_t>;

struct RankCertificate {
  std::size_t rank = 0;
  Engine engine = Engine::Numeric;
  /// (row, col) of each pivot in elimination order, in the caller's indexing.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  /// Relative singular-value cutoff; 0 for the exact engine.
  double tolerance = 0.0;
};

class CMatrix {
 public:
  /// Exact matrix over Q(w_d); entries in row-major order.
  static CMatrix exact(unsigned d, std::size_t rows, std::size_t cols, std::vector<CycNum> entries);
  static CMatrix numeric(Eigen::MatrixXcd values);

  Engine engine() const noexcept { return std::holds_alternative<ExactData>(data_) ? Engine::Exact : Engine::Numeric; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Root-of-unity order of an exact matrix.
  unsigned order() const;

  const CycNum& exact_at(std::size_t r, std::size_t c) const;
  std::complex<double> value(std::size_t r, std::size_t c) const;
  /// Numeric payload; exact entries are evaluated at w_d = exp(2*pi*i/d).
  Eigen::MatrixXcd to_numeric() const;

 private:
  struct ExactData {
    unsigned d;
    std::vector<CycNum> entries;
  };
  CMatrix(std::size_t rows, std::size_t cols, std::variant<ExactData, Eigen::MatrixXcd> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {}

  std::size_t rows_;
  std::size_t cols_;
  std::variant<ExactData, Eigen::MatrixXcd> data_;
};

/// Rows and columns selected in the listed order. Throws std::out_of_range
/// for an index past the end and std::invalid_argument for a repeated index.
CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);
CMatrix transpose(const CMatrix& m);

RankCertificate rank(const CMatrix& m, double tol = kDefaultRankTol);

/// Orthonormal basis of the right nullspace, computed numerically.
/// Exact matrices are evaluated first.
std::vector<Eigen::VectorXcd> nullspace_basis(const CMatrix& m, double tol = kDefaultRankTol);

/// Singular-value rank rule shared by every numeric path.
std::size_t numeric_rank_from_singular_values(const Eigen::VectorXd& sv, std::size_t rows, std::size_t cols,
                                              double tol);

namespace detail {
struct ExactRankerData;
}

/// Repeated exact ranks of submatrices of one fixed exact matrix.
/// Entries are converted once into reduced integral form; each rank call
/// only copies the selected entries and eliminates. Thread-safe.
class ExactRanker {
 public:
  explicit ExactRanker(const CMatrix& m);
  ~ExactRanker();
  ExactRanker(ExactRanker&&) noexcept;
  ExactRanker& operator=(ExactRanker&&) noexcept;

  std::size_t rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  RankCertificate certificate(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

 private:
  std::unique_ptr<const detail::ExactRankerData> data_;
};

/// Repeated numeric ranks of submatrices of one fixed complex matrix.
class NumericRanker {
 public:
  NumericRanker(Eigen::MatrixXcd m, double tol = kDefaultRankTol);

  std::size_t rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  RankCertificate certificate(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  double tolerance() const noexcept { return tol_; }

 private:
  Eigen::MatrixXcd m_;
  double tol_;
};

}  // namespace kdq
