#pragma once

// Exact arithmetic in the cyclotomic field Q(w_d), w_d = exp(2*pi*i/d).
//
// A CycNum stores a polynomial of degree < d in w_d, i.e. an element of
// Q[x]/(x^d - 1). Two representatives denote the same field element when
// their difference vanishes modulo the d-th cyclotomic polynomial; this is
// the only zero test used anywhere in the exact engine.

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace kdq {

/// Dense univariate polynomial with rational coefficients, ascending degree.
/// The coefficient vector is kept trimmed: it is empty for the zero
/// polynomial and has a nonzero last entry otherwise.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<mpq_class> coeffs);

  static Poly monomial(std::size_t degree, const mpq_class& coeff = 1);

  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  struct DivMod;
  /// Euclidean division by a nonzero divisor.
  DivMod divmod(const Poly& divisor) const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

struct Poly::DivMod {
  Poly quotient;
  Poly remainder;
};

/// The d-th cyclotomic polynomial, obtained by dividing x^d - 1 by every
/// Phi_e with e a proper divisor of d. Results are memoised per d.
const Poly& cyclotomic_polynomial(unsigned d);

/// Euler's totient, equal to deg Phi_d.
unsigned euler_totient(unsigned d);

/// Element of Q(w_d) represented modulo x^d - 1.
class CycNum {
 public:
  /// The zero element of Q(w_d).
  explicit CycNum(unsigned d);
  /// Takes a coefficient vector of length exactly d.
  CycNum(unsigned d, std::vector<mpq_class> coeffs);

  unsigned order() const noexcept { return d_; }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }

  /// Residue modulo Phi_d: the canonical form of this field element.
  Poly reduced() const;
  bool is_zero() const;
  /// Numeric value with w_d = exp(2*pi*i/d).
  std::complex<double> evaluate() const;
  /// True when the representative is a single w_d^k with coefficient one.
  bool is_unit_monomial(std::size_t* exponent = nullptr) const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& other);
  CycNum& operator-=(const CycNum& other);
  CycNum& operator*=(const CycNum& other);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  /// Field equality (not representative equality).
  friend bool operator==(const CycNum& a, const CycNum& b);

 private:
  void require_same_order(const CycNum& other) const;

  unsigned d_;
  std::vector<mpq_class> coeffs_;
};

/// w_d^(k mod d). Throws std::invalid_argument for d == 0.
CycNum root_power(unsigned d, std::int64_t k);

inline bool is_zero(const CycNum& a) { return a.is_zero(); }

}  // namespace kdq
