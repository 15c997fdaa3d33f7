#pragma once

// Basis pairs, the Kirkwood-Dirac quasiprobability table, supports and
// classicality of pure states.
//
// Conventions: the state is stored through its A-basis coefficients
// psi_i = <a_i|psi>. The transition matrix has U_ij = <a_i|b_j>, so the
// B-basis coefficients are <b_j|psi> = (U^dagger psi)_j, and
//     Q_ij = <a_i|psi> <psi|b_j> <b_j|a_i>.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "kdq/linalg.hpp"

namespace kdq {

inline constexpr double kDefaultSupportEps = 1e-10;
inline constexpr double kDefaultClassicalEps = 1e-10;

enum class BasisKind { DFT, GeneralMUB, General };

const char* to_string(BasisKind kind) noexcept;

class TransitionMatrix {
 public:
  /// Wraps an arbitrary unitary. Throws std::invalid_argument if U is not
  /// square, not unitary within 1e-10, or (for GeneralMUB) not flat with
  /// |U_ij| = 1/sqrt(d) within 1e-10.
  static TransitionMatrix from_unitary(Eigen::MatrixXcd u, BasisKind kind = BasisKind::General);

  unsigned dim() const noexcept { return static_cast<unsigned>(numeric_.rows()); }
  BasisKind kind() const noexcept { return kind_; }
  bool is_mub() const noexcept { return kind_ != BasisKind::General; }
  const Eigen::MatrixXcd& numeric() const noexcept { return numeric_; }
  /// For DFT only: the matrix (w_d^(ij)) over Q(w_d), without the 1/sqrt(d)
  /// prefactor. Ranks and nullspaces are unaffected by the scaling.
  const std::optional<CMatrix>& exact() const noexcept { return exact_; }

 private:
  friend TransitionMatrix dft_matrix(unsigned d);
  TransitionMatrix(Eigen::MatrixXcd numeric, std::optional<CMatrix> exact, BasisKind kind)
      : numeric_(std::move(numeric)), exact_(std::move(exact)), kind_(kind) {}

  Eigen::MatrixXcd numeric_;
  std::optional<CMatrix> exact_;
  BasisKind kind_;
};

/// F_ij = w_d^(ij) / sqrt(d). Throws std::invalid_argument for d == 0.
TransitionMatrix dft_matrix(unsigned d);

class StateVector {
 public:
  /// Normalises the given A-basis amplitudes. Throws std::invalid_argument
  /// for an empty or zero vector.
  explicit StateVector(Eigen::VectorXcd amps_a);

  unsigned dim() const noexcept { return static_cast<unsigned>(amps_.size()); }
  const Eigen::VectorXcd& amps_a() const noexcept { return amps_; }
  /// Norm of the amplitudes as supplied, before normalisation.
  double input_norm() const noexcept { return input_norm_; }

  /// <b_j|psi> for every j.
  Eigen::VectorXcd amps_b(const TransitionMatrix& u) const;

 private:
  Eigen::VectorXcd amps_;
  double input_norm_;
};

struct KDDist {
  Eigen::MatrixXcd q;

  std::complex<double> total() const { return q.sum(); }
  /// Sum over j of Q_ij, which equals |<a_i|psi>|^2.
  Eigen::VectorXcd row_marginals() const { return q.rowwise().sum(); }
  /// Sum over i of Q_ij, which equals |<b_j|psi>|^2.
  Eigen::VectorXcd col_marginals() const { return q.colwise().sum().transpose(); }
};

KDDist kd_distribution(const StateVector& psi, const TransitionMatrix& u);

struct SupportProfile {
  IndexList s_set;
  IndexList t_set;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double epsilon = kDefaultSupportEps;
};

/// Coefficients count as nonzero when |c| > eps * max |c|, separately in
/// each basis.
SupportProfile support_profile(const StateVector& psi, const TransitionMatrix& u, double eps = kDefaultSupportEps);

enum class Verdict { Classical, Nonclassical };

const char* to_string(Verdict v) noexcept;

struct WitnessCell {
  std::size_t i = 0;
  std::size_t j = 0;
  std::complex<double> q;
};

struct Classicality {
  Verdict verdict = Verdict::Classical;
  /// Present iff the verdict is Nonclassical: the cell maximising
  /// max(|Im q|, -Re q).
  std::optional<WitnessCell> witness;
};

/// Classical iff every cell has |Im q| <= eps and Re q >= -eps.
Classicality classify_state(const StateVector& psi, const TransitionMatrix& u, double eps = kDefaultClassicalEps);

/// max_ij |U_ij|^-2; +infinity when some overlap vanishes.
double support_uncertainty_bound(const TransitionMatrix& u);

/// Classification of a DFT state from its support sizes alone: Classical
/// exactly on n_a * n_b == d, Nonclassical above. Throws std::domain_error
/// when n_a * n_b < d, which no state can reach (the support threshold is
/// misconfigured), and std::invalid_argument for a non-DFT pair.
Verdict predict_classicality_dft(const SupportProfile& profile, const TransitionMatrix& u);

/// For a flat (mutually unbiased) pair: a state that is not a basis vector
/// and has n_a > d/2 or n_b > d/2 is nonclassical. Returns whether the
/// criterion fires; false means "undetermined", not "classical".
/// Throws std::invalid_argument when the pair is not unbiased and
/// std::domain_error when the profile is that of a basis vector.
bool half_support_criterion(const SupportProfile& profile, const TransitionMatrix& u);

}  // namespace kdq
