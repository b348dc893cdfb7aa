#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tailqw/errors.hpp"
#include "tailqw/evolve.hpp"

namespace tailqw {

namespace {

constexpr double kClusterGap = 1e-9;
constexpr double kNegligibleWeight = 1e-14;

double golden_maximize(const SpectralOverlap& overlap, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return std::abs(overlap.amplitude(t)); };
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void check_vectors(const EigDecomposition& eig, const CVector& source, const CVector& target) {
  const auto n = eig.values.size();
  if (source.size() != n || target.size() != n)
    throw ValidationError("transfer: state dimension does not match the operator (" +
                          std::to_string(source.size()) + ", " + std::to_string(target.size()) +
                          " vs " + std::to_string(n) + ")");
  if (std::abs(source.norm() - 1.0) > 1e-10 || std::abs(target.norm() - 1.0) > 1e-10)
    throw ValidationError("transfer: source and target must be unit vectors");
}

}  // namespace

double PSTCertificate::reproduced_fidelity() const {
  cplx sum{0.0, 0.0};
  for (const auto& e : eigen_support) sum += e.overlap * std::exp(cplx(0.0, -e.eigenvalue * time));
  return std::abs(sum);
}

double PSTCertificate::max_phase_error() const {
  double worst = 0.0;
  for (const auto& e : eigen_support) worst = std::max(worst, e.phase_error);
  return worst;
}

PSTCertificate certify_transfer(const EigDecomposition& eig, const CVector& source,
                                const CVector& target, double time, double threshold) {
  check_vectors(eig, source, target);
  const SpectralOverlap overlap(eig, source, target);
  PSTCertificate cert;
  cert.source = source;
  cert.target = target;
  cert.time = time;
  cert.threshold = threshold;
  cert.amplitude = overlap.amplitude(time);
  cert.fidelity = std::abs(cert.amplitude);

  const auto& values = overlap.eigenvalues();
  const auto& sc = overlap.source_coefficients();
  const auto& tc = overlap.target_coefficients();
  const cplx unit_amp =
      cert.fidelity > 0.0 ? cert.amplitude / cert.fidelity : cplx(1.0, 0.0);
  Eigen::Index k = 0;
  while (k < values.size()) {
    Eigen::Index end = k + 1;
    while (end < values.size() && values[end] - values[end - 1] <= kClusterGap) ++end;
    double s2 = 0.0, t2 = 0.0, mean = 0.0;
    cplx ov{0.0, 0.0};
    for (Eigen::Index j = k; j < end; ++j) {
      s2 += std::norm(sc[j]);
      t2 += std::norm(tc[j]);
      ov += std::conj(tc[j]) * sc[j];
      mean += values[j];
    }
    mean /= static_cast<double>(end - k);
    if (s2 > kNegligibleWeight * kNegligibleWeight || t2 > kNegligibleWeight * kNegligibleWeight) {
      EigenSupportEntry e;
      e.eigenvalue = mean;
      e.source_weight = std::sqrt(s2);
      e.target_weight = std::sqrt(t2);
      e.overlap = ov;
      if (std::abs(ov) > 1e-12)
        e.phase_error = std::abs(std::arg(ov * std::exp(cplx(0.0, -mean * time)) / unit_amp));
      cert.eigen_support.push_back(e);
    }
    k = end;
  }
  return cert;
}

std::vector<PSTCertificate> detect_pst(const HermitianMatrix& block, const CVector& source,
                                       const CVector& target, double horizon, double threshold) {
  return detect_pst(hermitian_eig(block), source, target, horizon, threshold);
}

std::vector<PSTCertificate> detect_pst(const EigDecomposition& eig, const CVector& source,
                                       const CVector& target, double horizon, double threshold) {
  check_vectors(eig, source, target);
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw ValidationError("detect_pst: horizon must be positive and finite");
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw ValidationError("detect_pst: threshold must lie in (0, 1]");

  const SpectralOverlap overlap(eig, source, target);
  double total = 0.0;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (Eigen::Index k = 0; k < overlap.eigenvalues().size(); ++k) {
    const double w = std::abs(overlap.weights()[k]);
    total += w;
    if (w <= kNegligibleWeight) continue;
    const double lambda = overlap.eigenvalues()[k];
    if (!any) lo = hi = lambda;
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
    any = true;
  }
  if (total <= 1e-12)
    throw NoTransferPossible("detect_pst: source and target share no eigenspace support");

  std::vector<PSTCertificate> out;
  const double spread = hi - lo;
  if (spread <= kClusterGap) {
    auto cert = certify_transfer(eig, source, target, 0.0, threshold);
    if (cert.fidelity >= threshold) out.push_back(std::move(cert));
    return out;
  }

  const double step = std::numbers::pi / (40.0 * spread);
  const auto count = static_cast<std::size_t>(std::ceil(horizon / step));
  std::vector<double> grid(count + 1);
  for (std::size_t i = 0; i <= count; ++i) grid[i] = std::min(horizon, static_cast<double>(i) * step);
  const auto amps = overlap.amplitudes(grid);
  std::vector<double> f(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) f[i] = std::abs(amps[i]);

  const double gate = threshold - 0.01;
  std::vector<double> peaks;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const bool last = i + 1 == f.size();
    const bool local = f[i] > f[i - 1] && (last || f[i] >= f[i + 1]);
    if (!local || f[i] <= gate) continue;
    const double t = last ? grid[i] : golden_maximize(overlap, grid[i - 1], grid[i + 1]);
    const double best = std::abs(overlap.amplitude(t)) >= f[i] ? t : grid[i];
    if (!peaks.empty() && std::abs(best - peaks.back()) <= 1e-8) continue;
    peaks.push_back(best);
  }
  for (double t : peaks) {
    auto cert = certify_transfer(eig, source, target, t, threshold);
    if (cert.fidelity >= threshold) out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace tailqw
