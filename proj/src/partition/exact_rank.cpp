// Fraction-free (Bareiss) elimination over the Gaussian integers Z[i].
#include <cmath>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tailqw/errors.hpp"
#include "tailqw/partition.hpp"

namespace tailqw {
namespace {

struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return re == 0 && im == 0; }
};

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }

// a / b where b divides a exactly in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  const mpz_class norm = b.re * b.re + b.im * b.im;
  // a * conj(b)
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  GaussInt q;
  mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), norm.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), norm.get_mpz_t());
  return q;
}

GaussInt from_double(cplx z) {
  if (std::floor(z.real()) != z.real() || std::floor(z.imag()) != z.imag())
    throw ValidationError("exact_rank: entry is not a Gaussian integer");
  return {mpz_class(z.real()), mpz_class(z.imag())};
}

using GaussMatrix = std::vector<std::vector<GaussInt>>;

int bareiss_rank(GaussMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  GaussInt prev{1, 0};
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = divexact(m[row][col] * m[i][j] - m[i][col] * m[row][j], prev);
      m[i][col] = GaussInt{};
    }
    prev = m[row][col];
    ++row;
  }
  return static_cast<int>(row);
}

}  // namespace

int exact_rank(const CMatrix& m) {
  GaussMatrix g(m.rows(), std::vector<GaussInt>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g[i][j] = from_double(m(i, j));
  return bareiss_rank(std::move(g));
}

namespace detail {

// Walk-matrix rank with the matrix powers themselves formed in Z[i], so the
// result stays exact when entries of A^k exceed 2^53.
int exact_walk_rank(const Graph& g, int v) {
  const int n = g.size();
  std::vector<std::vector<std::pair<int, GaussInt>>> rows(n);
  for (const auto& [key, w] : g.entries()) {
    const GaussInt fwd = from_double(w);
    const GaussInt back{fwd.re, -fwd.im};
    rows[key.first].emplace_back(key.second, fwd);
    rows[key.second].emplace_back(key.first, back);
  }
  GaussMatrix walk(n, std::vector<GaussInt>(n));
  std::vector<GaussInt> col(n);
  col[v] = GaussInt{1, 0};
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) walk[i][k] = col[i];
    std::vector<GaussInt> next(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [j, w] : rows[i])
        if (!col[j].is_zero()) next[i] = next[i] + w * col[j];
    col = std::move(next);
  }
  return bareiss_rank(std::move(walk));
}

}  // namespace detail
}  // namespace tailqw
