#include "kdq/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kdq/random.hpp"

namespace kdq {

StateVector coset_classical_state(const CosetSpec& spec) {
  if (spec.d == 0 || spec.p == 0 || spec.d % spec.p != 0) {
    throw std::invalid_argument("coset_classical_state: p = " + std::to_string(spec.p) + " does not divide d = " +
                                std::to_string(spec.d));
  }
  const unsigned step = spec.d / spec.p;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(spec.d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.p));
  for (unsigned k = 0; k < spec.p; ++k) {
    const unsigned i = (spec.a_shift + k * step) % spec.d;
    const unsigned e = static_cast<unsigned>((static_cast<std::uint64_t>(i) * spec.b_shift) % spec.d);
    amps(i) = scale * std::polar(1.0, 2.0 * std::numbers::pi * e / spec.d);
  }
  return StateVector(std::move(amps));
}

StateVector random_state_in_subspace(const TransitionMatrix& u, std::span<const std::size_t> s_set,
                                     std::span<const std::size_t> t_set, std::uint64_t seed, double rank_tol) {
  const unsigned d = u.dim();
  std::vector<bool> in_s(d, false);
  for (std::size_t i : s_set) {
    if (i >= d) throw std::out_of_range("random_state_in_subspace: A-support index out of range");
    in_s[i] = true;
  }
  IndexList outside;
  for (unsigned i = 0; i < d; ++i)
    if (!in_s[i]) outside.push_back(i);
  const IndexList cols(t_set.begin(), t_set.end());

  // H(S, T) = { sum_{j in T} beta_j |b_j> : <a_i|.> = 0 for i not in S }
  const CMatrix constraint = submatrix(CMatrix::numeric(u.numeric()), outside, cols);
  const auto basis = nullspace_basis(constraint, rank_tol);
  if (basis.empty()) throw std::domain_error("random_state_in_subspace: H(S, T) is {0}");

  Rng rng(seed);
  Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cols.size()));
  for (const auto& v : basis) beta += rng.complex_normal() * v;

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d);
  for (std::size_t k = 0; k < cols.size(); ++k) amps += beta(static_cast<Eigen::Index>(k)) * u.numeric().col(static_cast<Eigen::Index>(cols[k]));
  return StateVector(std::move(amps));
}

TransitionMatrix mub_from_parts(unsigned d, std::span<const std::complex<double>> row_phases,
                                std::span<const std::complex<double>> col_phases,
                                std::span<const std::size_t> perm) {
  if (row_phases.size() != d || col_phases.size() != d || perm.size() != d) {
    throw std::invalid_argument("mub_from_parts: component sizes must equal d");
  }
  std::vector<bool> seen(d, false);
  for (std::size_t p : perm) {
    if (p >= d || seen[p]) throw std::invalid_argument("mub_from_parts: perm is not a permutation");
    seen[p] = true;
  }
  const TransitionMatrix dft = dft_matrix(d);
  const Eigen::MatrixXcd& f = dft.numeric();
  Eigen::MatrixXcd u(d, d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      const auto src = static_cast<Eigen::Index>(perm[j]);
      u(i, j) = row_phases[i] * f(i, src) * col_phases[perm[j]];
    }
  return TransitionMatrix::from_unitary(std::move(u), BasisKind::GeneralMUB);
}

TransitionMatrix random_mub_pair(unsigned d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_mub_pair: d must be at least 2");
  Rng rng(seed);
  std::vector<std::complex<double>> rows(d);
  std::vector<std::complex<double>> cols(d);
  for (auto& z : rows) z = rng.phase();
  for (auto& z : cols) z = rng.phase();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  return mub_from_parts(d, rows, cols, perm);
}

}  // namespace kdq
