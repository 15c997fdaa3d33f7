#include <doctest.h>

#include <numbers>
#include <random>

#include "kdq/cyclotomic.hpp"
#include "oracles.hpp"

using kdq::CycNum;
using kdq::root_power;

namespace {

std::vector<long long> as_integers(const std::vector<mpq_class>& c) {
  std::vector<long long> out;
  for (const auto& q : c) {
    REQUIRE(q.get_den() == 1);
    out.push_back(q.get_num().get_si());
  }
  return out;
}

std::vector<long long> as_integers(const kdq::Poly& p) { return as_integers(p.coeffs()); }

CycNum random_element(unsigned d, std::mt19937_64& gen, int spread = 2) {
  std::uniform_int_distribution<int> coeff(-spread, spread);
  std::vector<mpq_class> c(d);
  for (auto& x : c) x = coeff(gen);
  return CycNum(d, std::move(c));
}

}  // namespace

TEST_CASE("root_power reduces the exponent mod d") {
  CHECK(as_integers(root_power(4, 0).coeffs()) == std::vector<long long>{1, 0, 0, 0});
  CHECK(as_integers(root_power(4, 6).coeffs()) == std::vector<long long>{0, 0, 1, 0});
  CHECK(as_integers(root_power(4, -1).coeffs()) == std::vector<long long>{0, 0, 0, 1});
  CHECK_THROWS_AS(root_power(0, 1), std::invalid_argument);
}

TEST_CASE("w_6^3 equals -1") {
  const CycNum x = root_power(6, 3);
  CHECK(is_zero(x + root_power(6, 0)));
  CHECK(std::abs(oracle::evaluate(6, as_integers(x.coeffs())) + 1.0) < 1e-12);
  CHECK(std::abs(x.evaluate() + 1.0) < 1e-12);
}

TEST_CASE("ring operations") {
  CHECK(root_power(4, 1) * root_power(4, 3) == root_power(4, 0));

  const CycNum cube_roots = root_power(6, 2) + root_power(6, 4) + root_power(6, 0);
  CHECK(is_zero(cube_roots));
  CHECK(std::abs(oracle::evaluate(6, as_integers(cube_roots.coeffs()))) < 1e-12);

  const CycNum a = root_power(7, 3) + root_power(7, 5);
  CHECK(is_zero(a - a));
  CHECK(is_zero(a + (-a)));

  CHECK_THROWS_AS(root_power(4, 1) + root_power(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(root_power(4, 1) * root_power(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(CycNum(4, std::vector<mpq_class>(3)), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials of small order") {
  CHECK(as_integers(kdq::cyclotomic_polynomial(1)) == std::vector<long long>{-1, 1});
  CHECK(as_integers(kdq::cyclotomic_polynomial(4)) == oracle::cyclotomic(4));
  CHECK(as_integers(kdq::cyclotomic_polynomial(4)) == std::vector<long long>{1, 0, 1});
  CHECK(as_integers(kdq::cyclotomic_polynomial(6)) == std::vector<long long>{1, -1, 1});
}

TEST_CASE("cyclotomic polynomials match the product formula") {
  for (unsigned d = 1; d <= 60; ++d) {
    CAPTURE(d);
    const auto& phi = kdq::cyclotomic_polynomial(d);
    CHECK(as_integers(phi) == oracle::cyclotomic(d));
    CHECK(phi.degree() == static_cast<int>(kdq::euler_totient(d)));
    unsigned total = 0;
    for (unsigned e = 1; e <= d; ++e)
      if (d % e == 0) total += static_cast<unsigned>(kdq::cyclotomic_polynomial(e).degree());
    CHECK(total == d);
  }
}

TEST_CASE("is_zero on named elements") {
  CHECK(is_zero(root_power(4, 2) + root_power(4, 0)));
  CHECK_FALSE(is_zero(root_power(5, 1)));
  CycNum sum(6);
  for (int k = 0; k < 6; ++k) sum += root_power(6, k);
  CHECK(is_zero(sum));
  CHECK(is_zero(CycNum(9)));
  CHECK_FALSE(is_zero(root_power(1, 0)));
}

TEST_CASE("root_power evaluates to exp(2 pi i k / d)") {
  for (unsigned d = 1; d <= 24; ++d) {
    for (int k = -2 * static_cast<int>(d); k <= 2 * static_cast<int>(d); ++k) {
      CAPTURE(d);
      CAPTURE(k);
      const CycNum x = root_power(d, k);
      const std::complex<double> expected = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
      CHECK(std::abs(oracle::evaluate(d, as_integers(x.coeffs())) - expected) < 1e-12);
      CHECK(std::abs(x.evaluate() - expected) < 1e-12);
    }
  }
}

TEST_CASE("is_zero agrees with numeric evaluation on random elements") {
  const std::uint64_t seed = 0x5eed0001;
  MESSAGE("seed " << seed);
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  for (unsigned d = 1; d <= 24; ++d) {
    const auto phi = oracle::cyclotomic(d);
    unsigned zeros = 0;
    unsigned disagreements = 0;
    for (int n = 0; n < 10000; ++n) {
      // half of the draws are multiples of Phi_d, which vanish in the field
      std::vector<long long> c(d, 0);
      if (n % 2 == 0) {
        for (unsigned k = 0; k < d; ++k) {
          const int f = small(gen);
          if (f == 0) continue;
          for (std::size_t j = 0; j < phi.size(); ++j) c[(k + j) % d] += f * phi[j];
        }
      } else {
        for (auto& x : c) x = small(gen);
      }
      std::vector<mpq_class> q;
      for (long long x : c) q.emplace_back(static_cast<long>(x));
      const bool exact = is_zero(CycNum(d, q));
      const bool numeric = std::abs(oracle::evaluate(d, c)) < 1e-9;
      zeros += exact;
      disagreements += exact != numeric;
    }
    CAPTURE(d);
    CHECK(disagreements == 0);
    CHECK(zeros >= 5000);
  }
}

TEST_CASE("ring laws on random triples") {
  const std::uint64_t seed = 0x5eed0002;
  MESSAGE("seed " << seed);
  std::mt19937_64 gen(seed);
  for (unsigned d = 1; d <= 15; ++d) {
    for (int n = 0; n < 100; ++n) {
      CAPTURE(d);
      const CycNum a = random_element(d, gen);
      const CycNum b = random_element(d, gen);
      const CycNum c = random_element(d, gen);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(std::abs((a * b).evaluate() - a.evaluate() * b.evaluate()) < 1e-9);
    }
  }
}

TEST_CASE("reduced form is canonical") {
  // 1 + w + w^2 + w^3 + w^4 = 0 in Q(w_5); representatives differ, reductions agree
  std::vector<mpq_class> c{0, 1, 1, 1, 1};
  const CycNum x(5, c);
  CHECK(x == -root_power(5, 0));
  CHECK(x.reduced() == (-root_power(5, 0)).reduced());
  std::size_t e = 99;
  CHECK(root_power(5, 3).is_unit_monomial(&e));
  CHECK(e == 3);
  CHECK_FALSE(x.is_unit_monomial());
}
