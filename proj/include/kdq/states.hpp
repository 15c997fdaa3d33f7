#pragma once

// State families and basis-pair generators used by the verification suites.

#include <cstdint>
#include <span>

#include "kdq/kd.hpp"

namespace kdq {

/// Comb state on the DFT pair: A-support is the coset {i = a_shift mod d/p}
/// of size p, with linear phase w_d^(i * b_shift).
struct CosetSpec {
  unsigned d = 1;
  unsigned p = 1;
  unsigned a_shift = 0;
  unsigned b_shift = 0;
};

/// Throws std::invalid_argument when p does not divide d.
StateVector coset_classical_state(const CosetSpec& spec);

/// Random unit vector of H(S, T): states supported on s_set in the A basis
/// and on t_set in the B basis. Coefficients are complex Gaussian over an
/// orthonormal basis of the subspace. Throws std::domain_error when the
/// subspace is {0}.
StateVector random_state_in_subspace(const TransitionMatrix& u, std::span<const std::size_t> s_set,
                                     std::span<const std::size_t> t_set, std::uint64_t seed,
                                     double rank_tol = kDefaultRankTol);

/// D1 * F * D2 * P for diagonal phase matrices D1, D2 and a column
/// permutation P (column j of the result is column perm[j] of D1 F D2).
TransitionMatrix mub_from_parts(unsigned d, std::span<const std::complex<double>> row_phases,
                                std::span<const std::complex<double>> col_phases,
                                std::span<const std::size_t> perm);

/// mub_from_parts with uniform random phases and a uniform random permutation.
TransitionMatrix random_mub_pair(unsigned d, std::uint64_t seed);

}  // namespace kdq
