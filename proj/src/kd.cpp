#include "kdq/kd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kdq {

const char* to_string(BasisKind kind) noexcept {
  switch (kind) {
    case BasisKind::DFT:
      return "dft";
    case BasisKind::GeneralMUB:
      return "mub";
    case BasisKind::General:
      return "general";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept { return v == Verdict::Classical ? "classical" : "nonclassical"; }

TransitionMatrix TransitionMatrix::from_unitary(Eigen::MatrixXcd u, BasisKind kind) {
  if (u.rows() == 0 || u.rows() != u.cols()) throw std::invalid_argument("transition matrix must be square and nonempty");
  const auto d = u.rows();
  const double unitarity = (u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    throw std::invalid_argument("transition matrix is not unitary (deviation " + std::to_string(unitarity) + ")");
  }
  if (kind != BasisKind::General) {
    const double flat = 1.0 / std::sqrt(static_cast<double>(d));
    const double dev = (u.cwiseAbs().array() - flat).abs().maxCoeff();
    if (dev > 1e-10) throw std::invalid_argument("transition matrix is not mutually unbiased");
  }
  if (kind == BasisKind::DFT) {
    const double dev = (u - dft_matrix(static_cast<unsigned>(d)).numeric()).cwiseAbs().maxCoeff();
    if (dev > 1e-12) throw std::invalid_argument("transition matrix is not the DFT matrix");
    return dft_matrix(static_cast<unsigned>(d));
  }
  return TransitionMatrix(std::move(u), std::nullopt, kind);
}

TransitionMatrix dft_matrix(unsigned d) {
  if (d == 0) throw std::invalid_argument("dft_matrix: d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd f(n, n);
  std::vector<CycNum> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      const unsigned e = (i * j) % d;
      f(i, j) = scale * std::polar(1.0, 2.0 * std::numbers::pi * e / d);
      entries.push_back(root_power(d, e));
    }
  }
  return TransitionMatrix(std::move(f), CMatrix::exact(d, d, d, std::move(entries)), BasisKind::DFT);
}

StateVector::StateVector(Eigen::VectorXcd amps_a) : amps_(std::move(amps_a)) {
  if (amps_.size() == 0) throw std::invalid_argument("state vector is empty");
  input_norm_ = amps_.norm();
  if (!(input_norm_ > 0.0) || !std::isfinite(input_norm_)) throw std::invalid_argument("state vector has zero norm");
  amps_ /= input_norm_;
}

Eigen::VectorXcd StateVector::amps_b(const TransitionMatrix& u) const {
  if (u.dim() != dim()) throw std::invalid_argument("state and transition matrix dimensions differ");
  return u.numeric().adjoint() * amps_;
}

KDDist kd_distribution(const StateVector& psi, const TransitionMatrix& u) {
  const Eigen::VectorXcd b = psi.amps_b(u);
  const Eigen::VectorXcd& a = psi.amps_a();
  const auto d = a.size();
  KDDist out{Eigen::MatrixXcd(d, d)};
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out.q(i, j) = a(i) * std::conj(b(j)) * std::conj(u.numeric()(i, j));
  return out;
}

namespace {

IndexList relative_support(const Eigen::VectorXcd& v, double eps) {
  const double peak = v.cwiseAbs().maxCoeff();
  IndexList s;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > eps * peak) s.push_back(static_cast<std::size_t>(i));
  return s;
}

}  // namespace

SupportProfile support_profile(const StateVector& psi, const TransitionMatrix& u, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("support threshold must be nonnegative");
  SupportProfile p;
  p.epsilon = eps;
  p.s_set = relative_support(psi.amps_a(), eps);
  p.t_set = relative_support(psi.amps_b(u), eps);
  p.n_a = p.s_set.size();
  p.n_b = p.t_set.size();
  return p;
}

Classicality classify_state(const StateVector& psi, const TransitionMatrix& u, double eps) {
  const KDDist dist = kd_distribution(psi, u);
  Classicality out;
  double worst = -std::numeric_limits<double>::infinity();
  WitnessCell cell;
  for (Eigen::Index i = 0; i < dist.q.rows(); ++i) {
    for (Eigen::Index j = 0; j < dist.q.cols(); ++j) {
      const std::complex<double> q = dist.q(i, j);
      const double violation = std::max(std::abs(q.imag()), -q.real());
      if (violation > worst) {
        worst = violation;
        cell = {static_cast<std::size_t>(i), static_cast<std::size_t>(j), q};
      }
    }
  }
  if (worst > eps) {
    out.verdict = Verdict::Nonclassical;
    out.witness = cell;
  }
  return out;
}

double support_uncertainty_bound(const TransitionMatrix& u) {
  const double smallest = u.numeric().cwiseAbs().minCoeff();
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (smallest * smallest);
}

Verdict predict_classicality_dft(const SupportProfile& profile, const TransitionMatrix& u) {
  if (u.kind() != BasisKind::DFT) throw std::invalid_argument("predict_classicality_dft: transition is not the DFT");
  const std::size_t product = profile.n_a * profile.n_b;
  const std::size_t d = u.dim();
  if (product < d) {
    throw std::domain_error("support product " + std::to_string(product) + " is below d = " + std::to_string(d) +
                            "; support threshold is misconfigured");
  }
  return product == d ? Verdict::Classical : Verdict::Nonclassical;
}

bool half_support_criterion(const SupportProfile& profile, const TransitionMatrix& u) {
  if (!u.is_mub()) throw std::invalid_argument("half_support_criterion: bases are not mutually unbiased");
  if (profile.n_a <= 1 || profile.n_b <= 1) {
    throw std::domain_error("half_support_criterion: profile is that of a basis vector");
  }
  const std::size_t d = u.dim();
  return 2 * profile.n_a > d || 2 * profile.n_b > d;
}

}  // namespace kdq
