#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace oracle {

namespace {

int moebius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

std::vector<long long> multiply(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// exact division by a monic polynomial
std::vector<long long> divide(std::vector<long long> num, const std::vector<long long>& den) {
  const std::size_t n = num.size();
  const std::size_t m = den.size();
  std::vector<long long> q(n - m + 1, 0);
  for (std::size_t k = n - m + 1; k-- > 0;) {
    q[k] = num[k + m - 1];
    for (std::size_t j = 0; j < m; ++j) num[k + j] -= q[k] * den[j];
  }
  for (long long r : num)
    if (r != 0) throw std::logic_error("oracle::cyclotomic: inexact division");
  return q;
}

}  // namespace

std::vector<long long> cyclotomic(unsigned d) {
  std::vector<long long> num{1};
  std::vector<long long> den{1};
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::vector<long long> f(e + 1, 0);
    f[0] = -1;
    f[e] = 1;
    const int mu = moebius(d / e);
    if (mu == 1) num = multiply(num, f);
    if (mu == -1) den = multiply(den, f);
  }
  // den is monic up to sign (-1)^k
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  return divide(num, den);
}

std::complex<double> evaluate(unsigned d, const std::vector<long long>& c) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += static_cast<double>(c[k]) * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / d);
  }
  return s;
}

std::complex<double> dft_entry(unsigned d, long long i, long long j) {
  const long long e = ((i * j) % d + d) % d;
  return std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * std::numbers::pi * static_cast<double>(e) / d);
}

Eigen::MatrixXcd dft(unsigned d) {
  Eigen::MatrixXcd f(d, d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) f(i, j) = dft_entry(d, i, j);
  return f;
}

Eigen::MatrixXcd kd_table(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& u) {
  const auto d = psi.size();
  Eigen::MatrixXcd q(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    std::complex<double> psi_b = 0.0;  // <psi|b_j>
    for (Eigen::Index k = 0; k < d; ++k) psi_b += std::conj(psi(k)) * u(k, j);
    for (Eigen::Index i = 0; i < d; ++i) q(i, j) = psi(i) * psi_b * std::conj(u(i, j));
  }
  return q;
}

std::size_t lu_rank(const Eigen::MatrixXcd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(threshold);
  return static_cast<std::size_t>(lu.rank());
}

std::set<std::pair<unsigned, unsigned>> sampled_diagram(unsigned d, unsigned samples, std::uint64_t seed) {
  const Eigen::MatrixXcd f = dft(d);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::set<std::pair<unsigned, unsigned>> realised;
  const unsigned full = (1u << d) - 1;

  for (unsigned s = 1; s <= full; ++s) {
    std::vector<int> outside;
    for (unsigned i = 0; i < d; ++i)
      if (!(s >> i & 1u)) outside.push_back(static_cast<int>(i));
    for (unsigned t = 1; t <= full; ++t) {
      std::vector<int> cols;
      for (unsigned j = 0; j < d; ++j)
        if (t >> j & 1u) cols.push_back(static_cast<int>(j));
      const auto l = static_cast<Eigen::Index>(cols.size());

      // kernel of F[outside, T]: coefficient vectors over |b_j>, j in T
      Eigen::MatrixXcd kernel;
      if (outside.empty()) {
        kernel = Eigen::MatrixXcd::Identity(l, l);
      } else {
        Eigen::MatrixXcd c(static_cast<Eigen::Index>(outside.size()), l);
        for (std::size_t r = 0; r < outside.size(); ++r)
          for (Eigen::Index k = 0; k < l; ++k) c(static_cast<Eigen::Index>(r), k) = f(outside[r], cols[k]);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(c);
        lu.setThreshold(1e-9);
        if (lu.rank() == l) continue;
        kernel = lu.kernel();
      }
      Eigen::MatrixXcd w(d, kernel.cols());  // A-amplitudes per kernel vector
      w.setZero();
      for (Eigen::Index k = 0; k < l; ++k) w += f.col(cols[k]) * kernel.row(k);

      Eigen::VectorXcd coeff(kernel.cols());
      for (unsigned n = 0; n < samples; ++n) {
        for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) = {normal(gen), normal(gen)};
        const Eigen::VectorXd a = (w * coeff).cwiseAbs();
        const Eigen::VectorXd b = (kernel * coeff).cwiseAbs();
        const double amax = a.maxCoeff();
        const double bmax = b.maxCoeff();
        unsigned na = 0;
        unsigned nb = 0;
        for (Eigen::Index i = 0; i < a.size(); ++i) na += a(i) > 1e-8 * amax;
        for (Eigen::Index i = 0; i < b.size(); ++i) nb += b(i) > 1e-8 * bmax;
        realised.emplace(na, nb);
      }
    }
  }
  return realised;
}

}  // namespace oracle
