#include "tailqw/cube_modules.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "tailqw/errors.hpp"

namespace tailqw {

namespace {

using RealSparse = Eigen::SparseMatrix<double>;

void check_lattice_size(int n, const char* what) {
  if (n < 1 || n > 16)
    throw ValidationError(std::string(what) + ": n must lie in 1..16, got " + std::to_string(n));
}

// Basis vectors grouped by H-eigenvalue, highest first, with the matching
// lowering operator (which steps one group forward).
struct WeightSpaces {
  int dim = 0;
  std::vector<std::vector<int>> layers;
  std::vector<int> weights;
  RealSparse lower;
};

// Kernel of m (rows x cols) from its reduced row echelon form; one vector
// per free column, in column order.
std::vector<RVector> kernel_basis(RMatrix m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<RVector> out;
  if (rows == 0) {
    for (Eigen::Index c = 0; c < cols; ++c) out.push_back(RVector::Unit(cols, c));
    return out;
  }
  const double tol = 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index best;
    const double mag = m.col(c).tail(rows - r).cwiseAbs().maxCoeff(&best);
    if (mag <= tol) continue;
    m.row(r).swap(m.row(r + best));
    m.row(r) /= m(r, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && m(i, c) != 0.0) m.row(i) -= m(i, c) * m.row(r);
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RVector x = RVector::Zero(cols);
    x[f] = 1.0;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -m(static_cast<Eigen::Index>(i), f);
    out.push_back(std::move(x));
  }
  return out;
}

void gram_schmidt(std::vector<RVector>& vs) {
  std::vector<RVector> done;
  for (auto& v : vs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : done) v -= q.dot(v) * q;
    const double norm = v.norm();
    if (norm <= 1e-10) throw NumericalError("module extraction: dependent highest-weight vectors");
    done.push_back(v / norm);
  }
  vs = std::move(done);
}

std::vector<WalkModule> decompose(const WeightSpaces& ws) {
  const RealSparse raise = ws.lower.transpose();
  std::vector<WalkModule> out;
  for (std::size_t l = 0; l < ws.layers.size(); ++l) {
    const int lambda = ws.weights[l];
    if (lambda < 0) break;
    const auto& cols = ws.layers[l];
    RMatrix restricted(0, static_cast<Eigen::Index>(cols.size()));
    if (l > 0) {
      const auto& rows = ws.layers[l - 1];
      std::vector<int> row_pos(ws.dim, -1);
      for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
      restricted = RMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (RealSparse::InnerIterator it(raise, cols[j]); it; ++it)
          if (row_pos[it.row()] >= 0) restricted(row_pos[it.row()], static_cast<Eigen::Index>(j)) = it.value();
    }
    auto tops = kernel_basis(std::move(restricted));
    gram_schmidt(tops);
    for (const auto& local : tops) {
      RVector z = RVector::Zero(ws.dim);
      for (std::size_t j = 0; j < cols.size(); ++j) z[cols[j]] = local[static_cast<Eigen::Index>(j)];
      WalkModule m;
      m.chain_length = lambda + 1;
      m.highest_weight = lambda;
      m.basis.resize(ws.dim, m.chain_length);
      for (int k = 0; k < m.chain_length; ++k) {
        z /= z.norm();
        m.basis.col(k) = z.cast<cplx>();
        z = ws.lower * z;
      }
      m.is_primary = std::norm(m.basis(0, 0)) > 0.5;
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace

CMatrix LatticeOperator::dense() const { return CMatrix(matrix.cast<cplx>()); }

LatticeOperator lowering(int n) {
  check_lattice_size(n, "lowering");
  const int dim = 1 << n;
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  for (int b = 0; b < dim; ++b)
    for (int j = 0; j < n; ++j)
      if (!(b & (1 << j))) entries.emplace_back(b | (1 << j), b, 1);
  LatticeOperator op{n, IntSparse(dim, dim)};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

LatticeOperator raising(int n) {
  auto op = lowering(n);
  op.matrix = IntSparse(op.matrix.transpose());
  return op;
}

LatticeOperator h_op(int n) {
  const auto l = lowering(n);
  const auto r = raising(n);
  return {n, IntSparse(r.matrix * l.matrix - l.matrix * r.matrix)};
}

CVector zeta_state(int n, int k) {
  check_lattice_size(n, "zeta_state");
  if (k < 1 || k > n - 1)
    throw ValidationError("zeta_state: k must lie in 1.." + std::to_string(n - 1) + ", got " +
                          std::to_string(k));
  const int dim = 1 << n;
  const cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi / n);
  CVector v = CVector::Zero(dim);
  for (int s = 0; s < dim; ++s) {
    if (std::popcount(static_cast<unsigned>(s)) != k) continue;
    cplx a{0.0, 0.0};
    for (int j = 1; j <= n; ++j)
      if (s & (1 << (j - 1))) a += std::pow(zeta, j);
    v[s] = a;
  }
  v /= v.norm();
  for (int s = 0; s < dim; ++s) {
    if (std::abs(v[s]) > 1e-12) {
      v *= std::conj(v[s]) / std::abs(v[s]);
      v[s] = std::abs(v[s]);
      break;
    }
  }
  return v;
}

std::vector<WalkModule> decompose_cube(int n) {
  if (n < 0 || n > 12) throw ValidationError("decompose_cube: n must lie in 0..12, got " + std::to_string(n));
  WeightSpaces ws;
  ws.dim = 1 << n;
  ws.layers.resize(n + 1);
  for (int s = 0; s < ws.dim; ++s) ws.layers[std::popcount(static_cast<unsigned>(s))].push_back(s);
  for (int k = 0; k <= n; ++k) ws.weights.push_back(n - 2 * k);
  if (n == 0) {
    ws.lower = RealSparse(1, 1);
  } else {
    ws.lower = lowering(n).matrix.cast<double>();
  }
  return decompose(ws);
}

std::vector<WalkModule> clebsch_gordan_square(int n) {
  if (n < 1 || n > 10)
    throw ValidationError("clebsch_gordan_square: n must lie in 1..10, got " + std::to_string(n));
  const int side = n + 1;
  WeightSpaces ws;
  ws.dim = side * side;
  ws.layers.resize(2 * n + 1);
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) ws.layers[a + b].push_back(a * side + b);
  for (int s = 0; s <= 2 * n; ++s) ws.weights.push_back(2 * n - 2 * s);
  std::vector<Eigen::Triplet<double>> entries;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      if (a < n) entries.emplace_back((a + 1) * side + b, a * side + b, std::sqrt((a + 1.0) * (n - a)));
      if (b < n) entries.emplace_back(a * side + b + 1, a * side + b, std::sqrt((b + 1.0) * (n - b)));
    }
  }
  ws.lower = RealSparse(ws.dim, ws.dim);
  ws.lower.setFromTriplets(entries.begin(), entries.end());
  return decompose(ws);
}

std::vector<WalkModule> dark_modules_of_tailed_cube(int n) {
  if (n < 2) throw ValidationError("dark_modules_of_tailed_cube: n must be at least 2");
  auto all = decompose_cube(n);
  std::vector<WalkModule> out;
  for (auto& m : all)
    if (!m.is_primary) out.push_back(std::move(m));
  return out;
}

CMatrix module_block(const WalkModule& m, const CMatrix& a) { return m.basis.adjoint() * a * m.basis; }

double invariance_residual(const WalkModule& m, const CMatrix& a) {
  const CMatrix ap = a * m.basis;
  return (ap - m.basis * (m.basis.adjoint() * ap)).norm();
}

double block_residual(const std::vector<WalkModule>& modules, const CMatrix& a) {
  Eigen::Index total = 0;
  for (const auto& m : modules) total += m.basis.cols();
  CMatrix q(a.rows(), total);
  Eigen::Index at = 0;
  for (const auto& m : modules) {
    q.middleCols(at, m.basis.cols()) = m.basis;
    at += m.basis.cols();
  }
  CMatrix c = q.adjoint() * a * q;
  at = 0;
  for (const auto& m : modules) {
    c.block(at, at, m.basis.cols(), m.basis.cols()).setZero();
    at += m.basis.cols();
  }
  return c.norm();
}

}  // namespace tailqw
