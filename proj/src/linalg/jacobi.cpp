#include "tailqw/kernels.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <utility>
#include <vector>

namespace tailqw::kernels {
namespace {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(std::complex<double> x) { return std::conj(x); }
inline double real_of(double x) { return x; }
inline double real_of(std::complex<double> x) { return x.real(); }

// Two-sided rotation U = [[c, s], [-s*ph, c*ph]] acting on indices (p, q).
// U^dagger [[a, z], [conj(z), b]] U = diag(a - t r, b + t r), where for real
// input r = z (signed) and ph = 1, and for complex input r = |z| and
// ph = conj(z)/|z|.
template <class Scalar>
struct Rotation {
  int p = 0;
  int q = 0;
  double c = 1.0;
  double s = 0.0;
  Scalar ph{1.0};
  double new_pp = 0.0;
  double new_qq = 0.0;
  bool active = false;
};

template <class Scalar>
Rotation<Scalar> make_rotation(const Mat<Scalar>& a, int p, int q, double skip_below) {
  Rotation<Scalar> rot;
  rot.p = p;
  rot.q = q;
  const Scalar z = a(p, q);
  const double mag = std::abs(z);
  if (mag <= skip_below) return rot;

  double r;
  if constexpr (std::is_same_v<Scalar, double>) {
    r = z;
    rot.ph = 1.0;
  } else {
    r = mag;
    rot.ph = std::conj(z) / mag;
  }
  const double app = real_of(a(p, p));
  const double aqq = real_of(a(q, q));
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  rot.c = 1.0 / std::sqrt(t * t + 1.0);
  rot.s = t * rot.c;
  rot.new_pp = app - t * r;
  rot.new_qq = aqq + t * r;
  rot.active = true;
  return rot;
}

// Columns p, q of m <- m U.
template <class Scalar>
inline void rotate_columns(Mat<Scalar>& m, const Rotation<Scalar>& rot) {
  const Eigen::Index rows = m.rows();
  Scalar* cp = m.col(rot.p).data();
  Scalar* cq = m.col(rot.q).data();
  const Scalar u_qp = -rot.s * rot.ph;
  const Scalar u_qq = rot.c * rot.ph;
  for (Eigen::Index k = 0; k < rows; ++k) {
    const Scalar xp = cp[k];
    const Scalar xq = cq[k];
    cp[k] = rot.c * xp + u_qp * xq;
    cq[k] = rot.s * xp + u_qq * xq;
  }
}

// Entries (p, k), (q, k) of m <- U^dagger m, for one column k.
template <class Scalar>
inline void rotate_rows_at(Mat<Scalar>& m, const Rotation<Scalar>& rot, Eigen::Index k) {
  const Scalar cph = conj_of(rot.ph);
  const Scalar xp = m(rot.p, k);
  const Scalar xq = m(rot.q, k);
  m(rot.p, k) = rot.c * xp - rot.s * cph * xq;
  m(rot.q, k) = rot.s * xp + rot.c * cph * xq;
}

template <class Scalar>
inline void settle_block(Mat<Scalar>& m, const Rotation<Scalar>& rot) {
  m(rot.p, rot.p) = Scalar(rot.new_pp);
  m(rot.q, rot.q) = Scalar(rot.new_qq);
  m(rot.p, rot.q) = Scalar(0.0);
  m(rot.q, rot.p) = Scalar(0.0);
}

template <class Scalar>
double off_diagonal_norm(const Mat<Scalar>& m) {
  double sum = 0.0;
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

template <class Scalar>
JacobiOutput<Scalar> finish(Mat<Scalar>& a, Mat<Scalar>& v, int sweeps, double off, bool converged) {
  JacobiOutput<Scalar> out;
  out.diagonal.resize(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.diagonal[i] = real_of(a(i, i));
  out.vectors = std::move(v);
  out.sweeps = sweeps;
  out.off_norm = off;
  out.converged = converged;
  return out;
}

// Circle-method schedule over an even number of slots; slot == n is a bye.
std::vector<std::vector<std::pair<int, int>>> tournament(int n) {
  const int slots = n + (n % 2);
  std::vector<int> ring(slots);
  std::iota(ring.begin(), ring.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> rounds;
  rounds.reserve(slots - 1);
  for (int r = 0; r < slots - 1; ++r) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < slots / 2; ++i) {
      int p = ring[i];
      int q = ring[slots - 1 - i];
      if (p >= n || q >= n) continue;
      if (p > q) std::swap(p, q);
      pairs.emplace_back(p, q);
    }
    rounds.push_back(std::move(pairs));
    // keep ring[0] fixed, rotate the rest by one
    const int last = ring[slots - 1];
    for (int i = slots - 1; i > 1; --i) ring[i] = ring[i - 1];
    ring[1] = last;
  }
  return rounds;
}

}  // namespace

template <class Scalar>
JacobiOutput<Scalar> jacobi_cyclic(Mat<Scalar> a, const JacobiOptions& options) {
  const int n = static_cast<int>(a.rows());
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  const double norm = a.norm();
  const double target = options.relative_tolerance * norm;
  const double skip_below = 1e-20 * norm;

  double off = off_diagonal_norm(a);
  int sweeps = 0;
  while (off >= target && off > 0.0 && sweeps < options.max_sweeps) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const auto rot = make_rotation(a, p, q, skip_below);
        if (!rot.active) continue;
        rotate_columns(a, rot);
        for (Eigen::Index k = 0; k < n; ++k) rotate_rows_at(a, rot, k);
        settle_block(a, rot);
        rotate_columns(v, rot);
      }
    }
    ++sweeps;
    off = off_diagonal_norm(a);
  }
  return finish(a, v, sweeps, off, off < target || off == 0.0);
}

template <class Scalar>
JacobiOutput<Scalar> jacobi_round_robin(Mat<Scalar> a, const JacobiOptions& options) {
  const int n = static_cast<int>(a.rows());
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  const double norm = a.norm();
  const double target = options.relative_tolerance * norm;
  const double skip_below = 1e-20 * norm;
  const auto rounds = tournament(n);

  double off = off_diagonal_norm(a);
  int sweeps = 0;
  std::vector<Rotation<Scalar>> rots;
  while (off >= target && off > 0.0 && sweeps < options.max_sweeps) {
    for (const auto& pairs : rounds) {
      rots.clear();
      for (const auto& [p, q] : pairs) {
        auto rot = make_rotation(a, p, q, skip_below);
        if (rot.active) rots.push_back(rot);
      }
      if (rots.empty()) continue;
      const int count = static_cast<int>(rots.size());

#pragma omp parallel for schedule(static)
      for (int r = 0; r < count; ++r) rotate_columns(a, rots[r]);

#pragma omp parallel for schedule(static)
      for (int k = 0; k < n; ++k)
        for (const auto& rot : rots) rotate_rows_at(a, rot, k);

#pragma omp parallel for schedule(static)
      for (int r = 0; r < count; ++r) {
        settle_block(a, rots[r]);
        rotate_columns(v, rots[r]);
      }
    }
    ++sweeps;
    off = off_diagonal_norm(a);
  }
  return finish(a, v, sweeps, off, off < target || off == 0.0);
}

template JacobiOutput<double> jacobi_cyclic<double>(Mat<double>, const JacobiOptions&);
template JacobiOutput<std::complex<double>> jacobi_cyclic<std::complex<double>>(
    Mat<std::complex<double>>, const JacobiOptions&);
template JacobiOutput<double> jacobi_round_robin<double>(Mat<double>, const JacobiOptions&);
template JacobiOutput<std::complex<double>> jacobi_round_robin<std::complex<double>>(
    Mat<std::complex<double>>, const JacobiOptions&);

}  // namespace tailqw::kernels
