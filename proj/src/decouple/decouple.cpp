#include "tailqw/decouple.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailqw/errors.hpp"

namespace tailqw {

namespace {

// Two passes of classical Gram-Schmidt against the columns of `basis`.
void orthogonalize(CVector& v, const CMatrix& basis, Eigen::Index count) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const auto block = basis.leftCols(count);
    v -= block * (block.adjoint() * v);
  }
}

}  // namespace

LanczosResult lanczos(const HermitianMatrix& a, const CVector& start) {
  const Eigen::Index n = a.dim();
  if (start.size() != n)
    throw ValidationError("lanczos: start vector has dimension " + std::to_string(start.size()) +
                          ", matrix has " + std::to_string(n));
  if (std::abs(start.norm() - 1.0) > 1e-12) throw ValidationError("lanczos: start vector is not a unit vector");

  const double breakdown = kLanczosBreakdown * a.frobenius_norm();
  CMatrix basis(n, n);
  basis.col(0) = start;
  LanczosResult out;
  Eigen::Index m = 1;
  for (Eigen::Index k = 0;; ++k) {
    CVector w = a.matrix() * basis.col(k);
    const double alpha = basis.col(k).dot(w).real();
    out.diagonal.push_back(alpha);
    w -= alpha * basis.col(k);
    if (k > 0) w -= out.off_diagonal.back() * basis.col(k - 1);
    orthogonalize(w, basis, k + 1);
    const double beta = w.norm();
    if (k + 1 == n || beta <= breakdown) break;
    out.off_diagonal.push_back(beta);
    basis.col(k + 1) = w / beta;
    m = k + 2;
  }
  out.basis = basis.leftCols(m);
  return out;
}

DecoupledForm decouple(const TailedGraph& t) {
  if (t.tails().size() != 1)
    throw ValidationError("decouple: expected exactly one tail, got " +
                          std::to_string(t.tails().size()) + " (reduce multiple tails first)");
  const int n = t.finite_size();
  const auto& tail = t.tails().front();
  const HermitianMatrix a = t.base().hermitian();

  CVector start = CVector::Zero(n);
  start[tail.vertex] = 1.0;
  auto krylov = lanczos(a, start);
  const Eigen::Index m = krylov.basis.cols();

  // Complete to an orthonormal basis from e_0, e_1, ... in order.
  CMatrix all(n, n);
  all.leftCols(m) = krylov.basis;
  Eigen::Index filled = m;
  for (int i = 0; i < n && filled < n; ++i) {
    CVector v = CVector::Zero(n);
    v[i] = 1.0;
    orthogonalize(v, all, filled);
    const double norm = v.norm();
    if (norm <= 1e-6) continue;
    all.col(filled++) = v / norm;
  }
  if (filled != n) throw NumericalError("decouple: could not complete the dark basis");

  DecoupledForm form;
  form.attachment = tail.vertex;
  form.krylov_basis = std::move(krylov.basis);
  form.dark_basis = all.rightCols(n - m);
  form.dark_block = form.dark_basis.adjoint() * a.matrix() * form.dark_basis;
  form.dark_block = (form.dark_block + form.dark_block.adjoint().eval()) * 0.5;
  form.jacobi.diagonal.assign(krylov.diagonal.rbegin(), krylov.diagonal.rend());
  form.jacobi.off_diagonal.assign(krylov.off_diagonal.rbegin(), krylov.off_diagonal.rend());
  form.jacobi.tail_coupling = tail.weight;
  return form;
}

MultitailReduction reduce_multitail(const TailedGraph& t) {
  const auto& tails = t.tails();
  if (tails.empty()) throw ValidationError("reduce_multitail: graph has no tails");
  const Graph& g = t.base();
  const int n = g.size();

  std::vector<int> attach;
  for (const auto& tail : tails) attach.push_back(tail.vertex);
  std::sort(attach.begin(), attach.end());
  std::vector<bool> is_attach(n, false);
  for (int v : attach) is_attach[v] = true;

  const double tail_weight = tails.front().weight;
  for (const auto& tail : tails)
    if (tail.weight != tail_weight)
      throw NotEquitable("reduce_multitail: tails carry different coupling weights", tail.vertex, 0);
  for (int a : attach)
    for (int b : g.neighbors(a))
      if (is_attach[b])
        throw NotEquitable("reduce_multitail: attachment vertices " + std::to_string(a) + " and " +
                               std::to_string(b) + " are adjacent",
                           a, 0);
  for (int u = 0; u < n; ++u) {
    if (is_attach[u]) continue;
    const cplx w0 = g.weight(attach.front(), u);
    for (int a : attach)
      if (std::abs(g.weight(a, u) - w0) > 1e-12 * std::max(1.0, std::abs(w0)))
        throw NotEquitable("reduce_multitail: vertex " + std::to_string(u) +
                               " is not joined uniformly to the attachment cell",
                           u, 0);
  }

  const int merged = attach.front();
  MultitailReduction out;
  out.vertex_map.assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (is_attach[v] && v != merged) continue;
    out.vertex_map[v] = next++;
  }
  for (int v : attach) out.vertex_map[v] = out.vertex_map[merged];

  const double scale = std::sqrt(static_cast<double>(attach.size()));
  std::vector<Edge> edges;
  for (const auto& [key, w] : g.entries()) {
    const bool a0 = is_attach[key.first];
    const bool a1 = is_attach[key.second];
    if (!a0 && !a1) {
      edges.push_back({out.vertex_map[key.first], out.vertex_map[key.second], w});
    } else if (key.first == merged || key.second == merged) {
      edges.push_back({out.vertex_map[key.first], out.vertex_map[key.second], w * scale});
    }
  }
  out.graph = TailedGraph(Graph(next, edges), {Tail{out.vertex_map[merged], tail_weight}});
  return out;
}

double verify_decoupling(const TailedGraph& t, const DecoupledForm& form, int tail_length) {
  if (tail_length < 1) throw ValidationError("verify_decoupling: tail length must be at least 1");
  if (t.tails().size() != 1) throw ValidationError("verify_decoupling: expected exactly one tail");
  const int n = t.finite_size();
  const int dim = n + tail_length;
  const int dark = form.dark_dimension();
  const int m = form.krylov_dimension();
  const HermitianMatrix op = truncate(t, tail_length);

  CMatrix basis = CMatrix::Zero(dim, dim);
  basis.topLeftCorner(n, dark) = form.dark_basis;
  for (int r = 0; r < m; ++r) basis.block(0, dark + r, n, 1) = form.krylov_basis.col(m - 1 - r);
  for (int s = 0; s < tail_length; ++s) basis(n + s, dark + m + s) = 1.0;

  const CMatrix c = basis.adjoint() * op.matrix() * basis;
  double sum = 0.0;
  // off-block coupling, counted in both triangles
  sum += c.topRightCorner(dark, dim - dark).squaredNorm();
  sum += c.bottomLeftCorner(dim - dark, dark).squaredNorm();
  sum += (c.topLeftCorner(dark, dark) - form.dark_block).squaredNorm();

  const int jdim = dim - dark;
  for (int i = 0; i < jdim; ++i) {
    for (int j = 0; j < jdim; ++j) {
      const cplx entry = c(dark + i, dark + j);
      cplx expected{0.0, 0.0};
      if (i == j) {
        expected = i < m ? form.jacobi.diagonal[i] : 0.0;
      } else if (std::abs(i - j) == 1) {
        const int lo = std::min(i, j);
        if (lo < m - 1) expected = form.jacobi.off_diagonal[lo];
        else if (lo == m - 1) expected = form.jacobi.tail_coupling;
        else expected = 1.0;
      }
      sum += std::norm(entry - expected);
    }
  }
  return std::sqrt(sum);
}

}  // namespace tailqw
