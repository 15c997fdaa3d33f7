#include "kdq/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kdq {

const char* to_string(Engine engine) noexcept {
  return engine == Engine::Exact ? "exact" : "numeric";
}

CMatrix CMatrix::exact(unsigned d, std::size_t rows, std::size_t cols, std::vector<CycNum> entries) {
  if (d == 0) throw std::invalid_argument("CMatrix::exact: d must be positive");
  if (entries.size() != rows * cols) throw std::invalid_argument("CMatrix::exact: entry count mismatch");
  for (const auto& e : entries) {
    if (e.order() != d) throw std::invalid_argument("CMatrix::exact: mixed root-of-unity orders");
  }
  return CMatrix(rows, cols, ExactData{d, std::move(entries)});
}

CMatrix CMatrix::numeric(Eigen::MatrixXcd values) {
  const auto r = static_cast<std::size_t>(values.rows());
  const auto c = static_cast<std::size_t>(values.cols());
  return CMatrix(r, c, std::move(values));
}

unsigned CMatrix::order() const {
  if (const auto* e = std::get_if<ExactData>(&data_)) return e->d;
  throw std::logic_error("CMatrix::order: numeric matrix has no root-of-unity order");
}

const CycNum& CMatrix::exact_at(std::size_t r, std::size_t c) const {
  const auto* e = std::get_if<ExactData>(&data_);
  if (!e) throw std::logic_error("CMatrix::exact_at: numeric matrix");
  if (r >= rows_ || c >= cols_) throw std::out_of_range("CMatrix::exact_at");
  return e->entries[r * cols_ + c];
}

std::complex<double> CMatrix::value(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("CMatrix::value");
  if (const auto* e = std::get_if<ExactData>(&data_)) return e->entries[r * cols_ + c].evaluate();
  return std::get<Eigen::MatrixXcd>(data_)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

Eigen::MatrixXcd CMatrix::to_numeric() const {
  if (const auto* n = std::get_if<Eigen::MatrixXcd>(&data_)) return *n;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value(r, c);
  return out;
}

namespace {

void check_indices(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
  std::vector<bool> seen(bound, false);
  for (std::size_t i : idx) {
    if (i >= bound) {
      throw std::out_of_range(std::string("submatrix: ") + what + " index " + std::to_string(i) +
                              " out of range " + std::to_string(bound));
    }
    if (seen[i]) throw std::invalid_argument(std::string("submatrix: duplicate ") + what + " index " + std::to_string(i));
    seen[i] = true;
  }
}

}  // namespace

CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  check_indices(rows, m.rows(), "row");
  check_indices(cols, m.cols(), "column");
  if (m.engine() == Engine::Exact) {
    std::vector<CycNum> entries;
    entries.reserve(rows.size() * cols.size());
    for (std::size_t r : rows)
      for (std::size_t c : cols) entries.push_back(m.exact_at(r, c));
    return CMatrix::exact(m.order(), rows.size(), cols.size(), std::move(entries));
  }
  const Eigen::MatrixXcd full = m.to_numeric();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          full(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
  return CMatrix::numeric(std::move(out));
}

CMatrix transpose(const CMatrix& m) {
  if (m.engine() == Engine::Numeric) return CMatrix::numeric(m.to_numeric().transpose());
  std::vector<CycNum> entries;
  entries.reserve(m.rows() * m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) entries.push_back(m.exact_at(r, c));
  return CMatrix::exact(m.order(), m.cols(), m.rows(), std::move(entries));
}

std::size_t numeric_rank_from_singular_values(const Eigen::VectorXd& sv, std::size_t rows, std::size_t cols,
                                              double tol) {
  if (sv.size() == 0) return 0;
  const double smax = sv.maxCoeff();
  if (!(smax > 0.0)) return 0;
  const double cutoff = tol * smax * static_cast<double>(std::max(rows, cols));
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++r;
  return r;
}

namespace {

std::size_t numeric_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return numeric_rank_from_singular_values(svd.singularValues(), static_cast<std::size_t>(m.rows()),
                                           static_cast<std::size_t>(m.cols()), tol);
}

// Pivot positions of complete-pivoting elimination, truncated to `count`.
std::vector<std::pair<std::size_t, std::size_t>> numeric_pivots(Eigen::MatrixXcd a, std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<std::size_t> row_id(static_cast<std::size_t>(a.rows()));
  std::vector<std::size_t> col_id(static_cast<std::size_t>(a.cols()));
  std::iota(row_id.begin(), row_id.end(), 0);
  std::iota(col_id.begin(), col_id.end(), 0);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(count); ++k) {
    Eigen::Index pr = 0;
    Eigen::Index pc = 0;
    a.bottomRightCorner(a.rows() - k, a.cols() - k).cwiseAbs().maxCoeff(&pr, &pc);
    pr += k;
    pc += k;
    a.row(k).swap(a.row(pr));
    a.col(k).swap(a.col(pc));
    std::swap(row_id[static_cast<std::size_t>(k)], row_id[static_cast<std::size_t>(pr)]);
    std::swap(col_id[static_cast<std::size_t>(k)], col_id[static_cast<std::size_t>(pc)]);
    pivots.emplace_back(row_id[static_cast<std::size_t>(k)], col_id[static_cast<std::size_t>(k)]);
    const std::complex<double> p = a(k, k);
    for (Eigen::Index i = k + 1; i < a.rows(); ++i) {
      const std::complex<double> f = a(i, k) / p;
      a.row(i).tail(a.cols() - k) -= f * a.row(k).tail(a.cols() - k);
    }
  }
  return pivots;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact engine.
//
// Elements of Z[w_d] are stored as phi(d) integer coefficients reduced
// modulo the monic polynomial Phi_d, so an element is zero iff all of its
// coefficients are. Bareiss elimination divides by the previous pivot; the
// quotient is exact in Z[w_d] and is computed as
//     a / b = a * b' / N(b),   b' = prod_{sigma != id} sigma(b),  N(b) = b * b'
// where sigma ranges over the Galois automorphisms w -> w^k, gcd(k, d) = 1.

namespace detail {

struct ExactRankerData {
  unsigned d = 1;
  unsigned phi = 1;
  std::vector<long> modulus;                 // Phi_d, length phi + 1, monic
  std::vector<std::vector<long>> powers;     // x^e mod Phi_d for e < d
  std::vector<unsigned> conjugators;         // units k != 1 mod d
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> entries;            // rows * cols * phi
};

}  // namespace detail

namespace {

using detail::ExactRankerData;

struct ExactWorkspace {
  std::vector<mpz_class> a;      // working matrix
  std::vector<mpz_class> t;      // product buffer, 2*phi - 1
  std::vector<mpz_class> u;      // second product buffer
  std::vector<mpz_class> prev;   // previous pivot
  std::vector<mpz_class> conj;   // product of conjugates of prev
  std::vector<mpz_class> tmp;    // scratch element
  std::vector<mpz_class> sigma;  // scratch conjugate
  mpz_class norm;
  void ensure(std::size_t matrix, unsigned phi) {
    if (a.size() < matrix) a.resize(matrix);
    const std::size_t wide = 2 * static_cast<std::size_t>(phi);
    if (t.size() < wide) {
      t.resize(wide);
      u.resize(wide);
    }
    if (prev.size() < phi) {
      prev.resize(phi);
      conj.resize(phi);
      tmp.resize(phi);
      sigma.resize(phi);
    }
  }
};

ExactWorkspace& workspace() {
  thread_local ExactWorkspace ws;
  return ws;
}

// t[0 .. 2*phi-2] reduced in place modulo Phi_d; result in t[0 .. phi-1].
void reduce_wide(const ExactRankerData& f, mpz_class* t, std::size_t len) {
  const unsigned phi = f.phi;
  for (std::size_t k = len; k-- > phi;) {
    mpz_ptr c = t[k].get_mpz_t();
    if (mpz_sgn(c) == 0) continue;
    for (unsigned j = 0; j < phi; ++j) {
      const long m = f.modulus[j];
      if (m > 0) {
        mpz_submul_ui(t[k - phi + j].get_mpz_t(), c, static_cast<unsigned long>(m));
      } else if (m < 0) {
        mpz_addmul_ui(t[k - phi + j].get_mpz_t(), c, static_cast<unsigned long>(-m));
      }
    }
    mpz_set_ui(c, 0);
  }
}

// t += x * y (unreduced, length 2*phi-1)
void mul_acc(const ExactRankerData& f, mpz_class* t, const mpz_class* x, const mpz_class* y) {
  for (unsigned i = 0; i < f.phi; ++i) {
    if (mpz_sgn(x[i].get_mpz_t()) == 0) continue;
    for (unsigned j = 0; j < f.phi; ++j) mpz_addmul(t[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
}

void mul_sub(const ExactRankerData& f, mpz_class* t, const mpz_class* x, const mpz_class* y) {
  for (unsigned i = 0; i < f.phi; ++i) {
    if (mpz_sgn(x[i].get_mpz_t()) == 0) continue;
    for (unsigned j = 0; j < f.phi; ++j) mpz_submul(t[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
}

void clear(mpz_class* t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) mpz_set_ui(t[i].get_mpz_t(), 0);
}

// out = x * y mod Phi_d; out may alias x or y.
void mul_reduce(const ExactRankerData& f, mpz_class* out, const mpz_class* x, const mpz_class* y, mpz_class* wide) {
  const std::size_t len = 2 * static_cast<std::size_t>(f.phi) - 1;
  clear(wide, len);
  mul_acc(f, wide, x, y);
  reduce_wide(f, wide, len);
  for (unsigned i = 0; i < f.phi; ++i) mpz_swap(out[i].get_mpz_t(), wide[i].get_mpz_t());
}

bool elem_is_zero(const mpz_class* x, unsigned phi) {
  for (unsigned i = 0; i < phi; ++i)
    if (mpz_sgn(x[i].get_mpz_t()) != 0) return false;
  return true;
}

// Nonzero only in the constant coefficient.
bool elem_is_constant(const mpz_class* x, unsigned phi) {
  for (unsigned i = 1; i < phi; ++i)
    if (mpz_sgn(x[i].get_mpz_t()) != 0) return false;
  return true;
}

// out = sigma_k(x), x given in reduced basis {1, w, ..., w^(phi-1)}.
void conjugate(const ExactRankerData& f, mpz_class* out, const mpz_class* x, unsigned k) {
  clear(out, f.phi);
  for (unsigned i = 0; i < f.phi; ++i) {
    mpz_srcptr c = x[i].get_mpz_t();
    if (mpz_sgn(c) == 0) continue;
    const auto& p = f.powers[(static_cast<std::size_t>(i) * k) % f.d];
    for (unsigned j = 0; j < f.phi; ++j) {
      if (p[j] > 0) {
        mpz_addmul_ui(out[j].get_mpz_t(), c, static_cast<unsigned long>(p[j]));
      } else if (p[j] < 0) {
        mpz_submul_ui(out[j].get_mpz_t(), c, static_cast<unsigned long>(-p[j]));
      }
    }
  }
}

// Prepares ws.conj and ws.norm so that y / prev == y * conj / norm.
void prepare_division(const ExactRankerData& f, ExactWorkspace& ws) {
  const unsigned phi = f.phi;
  clear(ws.conj.data(), phi);
  mpz_set_ui(ws.conj[0].get_mpz_t(), 1);
  for (unsigned k : f.conjugators) {
    conjugate(f, ws.sigma.data(), ws.prev.data(), k);
    mul_reduce(f, ws.conj.data(), ws.conj.data(), ws.sigma.data(), ws.u.data());
  }
  mul_reduce(f, ws.tmp.data(), ws.conj.data(), ws.prev.data(), ws.u.data());
  if (!elem_is_constant(ws.tmp.data(), phi) || mpz_sgn(ws.tmp[0].get_mpz_t()) == 0) {
    throw std::logic_error("exact rank: field norm is not a nonzero integer");
  }
  ws.norm = ws.tmp[0];
}

struct BareissResult {
  std::size_t rank = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
};

BareissResult bareiss(const ExactRankerData& f, ExactWorkspace& ws, std::size_t rows, std::size_t cols,
                      bool want_pivots) {
  BareissResult out;
  const unsigned phi = f.phi;
  const std::size_t wide_len = 2 * static_cast<std::size_t>(phi) - 1;
  auto at = [&](std::size_t r, std::size_t c) { return ws.a.data() + (r * cols + c) * phi; };
  std::vector<std::size_t> row_id;
  if (want_pivots) {
    row_id.resize(rows);
    std::iota(row_id.begin(), row_id.end(), 0);
  }

  bool prev_is_one = true;
  bool prev_is_constant = true;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && elem_is_zero(at(p, c), phi)) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j)
        for (unsigned k = 0; k < phi; ++k) mpz_swap(at(p, j)[k].get_mpz_t(), at(r, j)[k].get_mpz_t());
      if (want_pivots) std::swap(row_id[p], row_id[r]);
    }
    if (want_pivots) out.pivots.emplace_back(row_id[r], c);

    if (!prev_is_one && !prev_is_constant) prepare_division(f, ws);
    const mpz_class* piv = at(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class* lead = at(i, c);
      const bool lead_zero = elem_is_zero(lead, phi);
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class* e = at(i, j);
        clear(ws.t.data(), wide_len);
        mul_acc(f, ws.t.data(), piv, e);
        if (!lead_zero) mul_sub(f, ws.t.data(), lead, at(r, j));
        reduce_wide(f, ws.t.data(), wide_len);
        if (prev_is_one) {
          for (unsigned k = 0; k < phi; ++k) mpz_swap(e[k].get_mpz_t(), ws.t[k].get_mpz_t());
        } else if (prev_is_constant) {
          for (unsigned k = 0; k < phi; ++k) mpz_divexact(e[k].get_mpz_t(), ws.t[k].get_mpz_t(), ws.prev[0].get_mpz_t());
        } else {
          mul_reduce(f, e, ws.t.data(), ws.conj.data(), ws.u.data());
          for (unsigned k = 0; k < phi; ++k) mpz_divexact(e[k].get_mpz_t(), e[k].get_mpz_t(), ws.norm.get_mpz_t());
        }
      }
    }
    for (unsigned k = 0; k < phi; ++k) ws.prev[k] = piv[k];
    prev_is_constant = elem_is_constant(piv, phi);
    prev_is_one = prev_is_constant && mpz_cmp_ui(piv[0].get_mpz_t(), 1) == 0;
    ++r;
  }
  out.rank = r;
  return out;
}

// Integer polynomial of degree < d reduced modulo monic Phi_d (in place).
void reduce_integer_poly(const ExactRankerData& f, std::vector<mpz_class>& p) {
  reduce_wide(f, p.data(), p.size());
  p.resize(f.phi);
}

std::unique_ptr<ExactRankerData> make_field(unsigned d) {
  auto f = std::make_unique<ExactRankerData>();
  f->d = d;
  f->phi = euler_totient(d);
  const Poly& cyc = cyclotomic_polynomial(d);
  f->modulus.resize(cyc.coeffs().size());
  for (std::size_t i = 0; i < cyc.coeffs().size(); ++i) {
    const mpq_class& c = cyc.coeffs()[i];
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
      throw std::logic_error("exact rank: cyclotomic coefficient is not a machine integer");
    }
    f->modulus[i] = c.get_num().get_si();
  }
  f->powers.resize(d);
  for (unsigned e = 0; e < d; ++e) {
    std::vector<mpz_class> p(std::max(e + 1, f->phi));
    p[e] = 1;
    reduce_integer_poly(*f, p);
    f->powers[e].resize(f->phi);
    for (unsigned j = 0; j < f->phi; ++j) f->powers[e][j] = p[j].get_si();
  }
  for (unsigned k = 2; k < d; ++k)
    if (std::gcd(k, d) == 1) f->conjugators.push_back(k);
  return f;
}

}  // namespace

ExactRanker::ExactRanker(const CMatrix& m) {
  if (m.engine() != Engine::Exact) throw std::invalid_argument("ExactRanker: matrix is not exact");
  auto f = make_field(m.order());
  f->rows = m.rows();
  f->cols = m.cols();
  f->entries.resize(f->rows * f->cols * f->phi);
  std::vector<mpz_class> poly;
  for (std::size_t r = 0; r < f->rows; ++r) {
    // Scaling a whole row by a nonzero rational preserves every submatrix rank.
    mpz_class den = 1;
    for (std::size_t c = 0; c < f->cols; ++c)
      for (const auto& q : m.exact_at(r, c).coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t c = 0; c < f->cols; ++c) {
      const auto& coeffs = m.exact_at(r, c).coeffs();
      poly.assign(std::max<std::size_t>(coeffs.size(), f->phi), mpz_class(0));
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        mpz_class scaled = den * coeffs[k].get_num();
        mpz_divexact(scaled.get_mpz_t(), scaled.get_mpz_t(), coeffs[k].get_den_mpz_t());
        poly[k] = scaled;
      }
      reduce_integer_poly(*f, poly);
      for (unsigned k = 0; k < f->phi; ++k) f->entries[(r * f->cols + c) * f->phi + k] = poly[k];
    }
  }
  data_ = std::move(f);
}

ExactRanker::~ExactRanker() = default;
ExactRanker::ExactRanker(ExactRanker&&) noexcept = default;
ExactRanker& ExactRanker::operator=(ExactRanker&&) noexcept = default;

namespace {

void load_submatrix(const ExactRankerData& f, ExactWorkspace& ws, std::span<const std::size_t> rows,
                    std::span<const std::size_t> cols) {
  ws.ensure(rows.size() * cols.size() * f.phi, f.phi);
  std::size_t out = 0;
  for (std::size_t r : rows) {
    if (r >= f.rows) throw std::out_of_range("ExactRanker: row index");
    for (std::size_t c : cols) {
      if (c >= f.cols) throw std::out_of_range("ExactRanker: column index");
      const mpz_class* src = f.entries.data() + (r * f.cols + c) * f.phi;
      for (unsigned k = 0; k < f.phi; ++k) ws.a[out++] = src[k];
    }
  }
}

}  // namespace

std::size_t ExactRanker::rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  if (rows.empty() || cols.empty()) return 0;
  auto& ws = workspace();
  load_submatrix(*data_, ws, rows, cols);
  return bareiss(*data_, ws, rows.size(), cols.size(), false).rank;
}

namespace {

void to_caller_indices(std::vector<std::pair<std::size_t, std::size_t>>& pivots, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols) {
  for (auto& [i, j] : pivots) {
    i = rows[i];
    j = cols[j];
  }
}

}  // namespace

RankCertificate ExactRanker::certificate(std::span<const std::size_t> rows,
                                         std::span<const std::size_t> cols) const {
  RankCertificate cert;
  cert.engine = Engine::Exact;
  if (rows.empty() || cols.empty()) return cert;
  auto& ws = workspace();
  load_submatrix(*data_, ws, rows, cols);
  auto res = bareiss(*data_, ws, rows.size(), cols.size(), true);
  cert.rank = res.rank;
  cert.pivots = std::move(res.pivots);
  to_caller_indices(cert.pivots, rows, cols);
  return cert;
}

NumericRanker::NumericRanker(Eigen::MatrixXcd m, double tol) : m_(std::move(m)), tol_(tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("NumericRanker: tolerance must be nonnegative");
}

namespace {

Eigen::MatrixXcd gather(const Eigen::MatrixXcd& m, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a] >= static_cast<std::size_t>(m.rows())) throw std::out_of_range("NumericRanker: row index");
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (cols[b] >= static_cast<std::size_t>(m.cols())) throw std::out_of_range("NumericRanker: column index");
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          m(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
    }
  }
  return out;
}

}  // namespace

std::size_t NumericRanker::rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  if (rows.empty() || cols.empty()) return 0;
  return numeric_rank(gather(m_, rows, cols), tol_);
}

RankCertificate NumericRanker::certificate(std::span<const std::size_t> rows,
                                           std::span<const std::size_t> cols) const {
  RankCertificate cert;
  cert.engine = Engine::Numeric;
  cert.tolerance = tol_;
  if (rows.empty() || cols.empty()) return cert;
  Eigen::MatrixXcd sub = gather(m_, rows, cols);
  cert.rank = numeric_rank(sub, tol_);
  cert.pivots = numeric_pivots(std::move(sub), cert.rank);
  to_caller_indices(cert.pivots, rows, cols);
  return cert;
}

namespace {

IndexList iota_list(std::size_t n) {
  IndexList v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

RankCertificate rank(const CMatrix& m, double tol) {
  const IndexList rows = iota_list(m.rows());
  const IndexList cols = iota_list(m.cols());
  if (m.engine() == Engine::Exact) return ExactRanker(m).certificate(rows, cols);
  return NumericRanker(m.to_numeric(), tol).certificate(rows, cols);
}

std::vector<Eigen::VectorXcd> nullspace_basis(const CMatrix& m, double tol) {
  const auto n = static_cast<Eigen::Index>(m.cols());
  std::vector<Eigen::VectorXcd> basis;
  if (n == 0) return basis;
  if (m.rows() == 0) {
    for (Eigen::Index k = 0; k < n; ++k) basis.push_back(Eigen::VectorXcd::Unit(n, k));
    return basis;
  }
  const Eigen::MatrixXcd a = m.to_numeric();
  // A full V is needed even for wide matrices, so pad short matrices with zero rows.
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(std::max(a.rows(), n), n);
  padded.topRows(a.rows()) = a;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(padded, Eigen::ComputeFullV);
  const std::size_t r = numeric_rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
  const Eigen::MatrixXcd& v = svd.matrixV();
  for (Eigen::Index k = static_cast<Eigen::Index>(r); k < n; ++k) basis.push_back(v.col(k));
  return basis;
}

}  // namespace kdq
