#include "kdq/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kdq {

Poly::Poly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(std::size_t degree, const mpq_class& coeff) {
  std::vector<mpq_class> c(degree + 1);
  c[degree] = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(c));
}

Poly::DivMod Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = coeffs_;
  const std::size_t dn = divisor.coeffs_.size();
  if (rem.size() < dn) return {Poly(), *this};
  std::vector<mpq_class> quo(rem.size() - dn + 1);
  const mpq_class& lead = divisor.coeffs_.back();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpq_class q = rem[k + dn - 1] / lead;
    quo[k] = q;
    if (sgn(q) == 0) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  rem.resize(dn - 1);
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

const Poly& cyclotomic_polynomial(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic_polynomial: d must be positive");
  static std::mutex mutex;
  static std::map<unsigned, Poly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  // x^d - 1 = prod_{e | d} Phi_e
  Poly acc = Poly::monomial(d) - Poly::monomial(0);
  for (unsigned e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto [q, r] = acc.divmod(cyclotomic_polynomial(e));
    if (!r.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
    acc = std::move(q);
  }
  std::lock_guard lock(mutex);
  // std::map never invalidates references on insert.
  return cache.emplace(d, std::move(acc)).first->second;
}

unsigned euler_totient(unsigned d) {
  if (d == 0) throw std::invalid_argument("euler_totient: d must be positive");
  unsigned result = d;
  unsigned n = d;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

CycNum::CycNum(unsigned d) : d_(d), coeffs_(d) {
  if (d == 0) throw std::invalid_argument("CycNum: order must be positive");
}

CycNum::CycNum(unsigned d, std::vector<mpq_class> coeffs) : d_(d), coeffs_(std::move(coeffs)) {
  if (d == 0) throw std::invalid_argument("CycNum: order must be positive");
  if (coeffs_.size() != d) {
    throw std::invalid_argument("CycNum: expected " + std::to_string(d) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
  }
}

Poly CycNum::reduced() const { return Poly(coeffs_).divmod(cyclotomic_polynomial(d_)).remainder; }

bool CycNum::is_zero() const { return reduced().is_zero(); }

std::complex<double> CycNum::evaluate() const {
  std::complex<double> sum = 0.0;
  for (unsigned k = 0; k < d_; ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    sum += coeffs_[k].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * k / d_);
  }
  return sum;
}

bool CycNum::is_unit_monomial(std::size_t* exponent) const {
  std::size_t found = d_;
  for (unsigned k = 0; k < d_; ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (found != d_ || coeffs_[k] != 1) return false;
    found = k;
  }
  if (found == d_) return false;
  if (exponent) *exponent = found;
  return true;
}

void CycNum::require_same_order(const CycNum& other) const {
  if (d_ != other.d_) {
    throw std::invalid_argument("CycNum: mismatched orders " + std::to_string(d_) + " and " +
                                std::to_string(other.d_));
  }
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& other) {
  require_same_order(other);
  for (unsigned k = 0; k < d_; ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& other) {
  require_same_order(other);
  for (unsigned k = 0; k < d_; ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& other) { return *this = *this * other; }

CycNum operator*(const CycNum& a, const CycNum& b) {
  a.require_same_order(b);
  const unsigned d = a.d_;
  std::vector<mpq_class> c(d);
  // cyclic convolution: x^d == 1
  for (unsigned i = 0; i < d; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      c[(i + j) % d] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return CycNum(d, std::move(c));
}

bool operator==(const CycNum& a, const CycNum& b) { return (a - b).is_zero(); }

CycNum root_power(unsigned d, std::int64_t k) {
  if (d == 0) throw std::invalid_argument("root_power: d must be positive");
  const auto dd = static_cast<std::int64_t>(d);
  const auto e = static_cast<std::size_t>(((k % dd) + dd) % dd);
  std::vector<mpq_class> c(d);
  c[e] = 1;
  return CycNum(d, std::move(c));
}

}  // namespace kdq
