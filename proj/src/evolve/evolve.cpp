#include "tailqw/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailqw/errors.hpp"

namespace tailqw {

State State::vertex(const TailedGraph& t, int v) {
  if (v < 0 || v >= t.finite_size())
    throw ValidationError("state: vertex " + std::to_string(v) + " out of range");
  State s;
  s.finite = CVector::Zero(t.finite_size());
  s.finite[v] = 1.0;
  s.tails.assign(t.tails().size(), CVector());
  return s;
}

State State::from_finite(const TailedGraph& t, CVector amplitudes) {
  if (amplitudes.size() != t.finite_size())
    throw ValidationError("state: expected " + std::to_string(t.finite_size()) +
                          " amplitudes, got " + std::to_string(amplitudes.size()));
  State s;
  s.finite = std::move(amplitudes);
  s.tails.assign(t.tails().size(), CVector());
  return s;
}

double State::norm() const {
  double sum = finite.squaredNorm();
  for (const auto& tail : tails) sum += tail.squaredNorm();
  return std::sqrt(sum);
}

int choose_truncation(double t_max, double tol) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw ValidationError("choose_truncation: t_max must be finite and non-negative");
  if (!(tol > 0.0 && tol < 1.0)) throw ValidationError("choose_truncation: tol must lie in (0, 1)");
  const double length = std::ceil(2.5 * t_max) + 30.0;
  if (length > static_cast<double>(kMaxTailLength))
    throw NonConvergence("choose_truncation: time " + std::to_string(t_max) + " needs a tail longer than " +
                             std::to_string(kMaxTailLength),
                         0);
  return static_cast<int>(length);
}

CVector embed(const TailedGraph& t, const State& s, int tail_length) {
  const int n = t.finite_size();
  if (s.finite.size() != n)
    throw ValidationError("state has " + std::to_string(s.finite.size()) + " base amplitudes, graph has " +
                          std::to_string(n) + " vertices");
  if (s.tails.size() > t.tails().size()) throw ValidationError("state has more tails than the graph");
  CVector v = CVector::Zero(n + tail_length * static_cast<int>(t.tails().size()));
  v.head(n) = s.finite;
  for (std::size_t i = 0; i < s.tails.size(); ++i) {
    const auto& tail = s.tails[i];
    for (Eigen::Index site = 0; site < tail.size(); ++site) {
      if (site >= tail_length) {
        if (tail[site] != cplx(0.0, 0.0))
          throw ValidationError("state has support beyond the truncated tail");
        continue;
      }
      v[tail_site(t, static_cast<int>(i), static_cast<int>(site), tail_length)] = tail[site];
    }
  }
  return v;
}

State restrict_state(const TailedGraph& t, const CVector& v, int tail_length) {
  const int n = t.finite_size();
  State s;
  s.finite = v.head(n);
  for (int i = 0; i < static_cast<int>(t.tails().size()); ++i)
    s.tails.push_back(v.segment(tail_site(t, i, 0, tail_length), tail_length));
  return s;
}

State evolve_truncated(const TailedGraph& t, const State& psi, double time, int tail_length) {
  const auto op = truncate(t, tail_length);
  return restrict_state(t, expm_apply(op, time, embed(t, psi, tail_length)), tail_length);
}

namespace {

void validate_initial(const State& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError("initial state must have unit norm");
  for (const auto& tail : psi.tails)
    for (Eigen::Index s = 1; s < tail.size(); ++s)
      if (tail[s] != cplx(0.0, 0.0))
        throw ValidationError("initial state may only occupy the first site of a tail");
}

struct Converged {
  int truncation;
  EigDecomposition eig;
  CVector evolved;  // embedded at `truncation`
};

// Tail length whose base amplitudes at `time` agree with the doubled length.
Converged converge(const TailedGraph& t, const State& psi, double time, double tol) {
  validate_initial(psi);
  int length = choose_truncation(std::abs(time), tol);
  auto eig = hermitian_eig(truncate(t, length));
  CVector current = expm_apply(eig, time, embed(t, psi, length));
  if (t.tails().empty()) return {length, std::move(eig), std::move(current)};
  const int n = t.finite_size();
  for (;;) {
    const int doubled = 2 * length;
    if (doubled > kMaxTailLength)
      throw NonConvergence("evolve: base amplitudes did not settle before tail length " +
                               std::to_string(length),
                           length);
    auto next_eig = hermitian_eig(truncate(t, doubled));
    CVector next = expm_apply(next_eig, time, embed(t, psi, doubled));
    const double change = (next.head(n) - current.head(n)).cwiseAbs().maxCoeff();
    if (change < tol) return {doubled, std::move(next_eig), std::move(next)};
    length = doubled;
    current = std::move(next);
  }
}

}  // namespace

EvolveResult evolve(const TailedGraph& t, const State& psi0, double time, double tol) {
  auto c = converge(t, psi0, time, tol);
  return {restrict_state(t, c.evolved, c.truncation), c.truncation};
}

ConvergedOperator converged_operator(const TailedGraph& t, const State& psi0, double t_max,
                                     double tol) {
  auto c = converge(t, psi0, t_max, tol);
  return {c.truncation, std::move(c.eig)};
}

double fidelity(const TailedGraph& t, const State& source, const State& target, double time,
                double tol) {
  auto c = converge(t, source, time, tol);
  return std::abs(embed(t, target, c.truncation).dot(c.evolved));
}

FidelityCurve fidelity_curve(const TailedGraph& t, const State& source, const State& target,
                             std::span<const double> times, double tol) {
  if (times.empty()) throw ValidationError("fidelity_curve: empty time grid");
  double t_max = 0.0;
  for (double x : times) t_max = std::max(t_max, std::abs(x));
  auto c = converge(t, source, t_max, tol);
  const SpectralOverlap overlap(c.eig, embed(t, source, c.truncation),
                                embed(t, target, c.truncation));
  const auto amps = overlap.amplitudes(times);
  FidelityCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.magnitudes.reserve(amps.size());
  for (const auto& a : amps) curve.magnitudes.push_back(std::abs(a));
  curve.truncation = c.truncation;
  curve.converged = true;
  return curve;
}

std::optional<double> clique_cone_return_bound(const TailedGraph& t, int u) {
  const Graph& g = t.base();
  if (t.tails().empty() || u < 0 || u >= g.size() || t.has_tail_at(u)) return std::nullopt;
  std::vector<bool> attached(g.size(), false);
  for (const auto& tail : t.tails()) attached[tail.vertex] = true;
  std::vector<int> clique;
  for (int v = 0; v < g.size(); ++v)
    if (!attached[v]) clique.push_back(v);
  const int c = static_cast<int>(clique.size());
  if (c < 2) return std::nullopt;
  for (int a = 0; a < g.size(); ++a) {
    if (!attached[a]) continue;
    const cplx w = g.weight(a, clique.front());
    if (w == cplx(0.0, 0.0)) return std::nullopt;
    for (int b = 0; b < g.size(); ++b) {
      if (b == a) continue;
      const cplx expected = attached[b] ? cplx(0.0, 0.0) : w;
      if (g.weight(a, b) != expected) return std::nullopt;
    }
  }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j)
      if (g.weight(clique[i], clique[j]) != cplx(1.0, 0.0)) return std::nullopt;
  return static_cast<double>(c - 2) / c;
}

SedentarinessReport sedentariness(const TailedGraph& t, int u, std::span<const double> times,
                                  double tol) {
  const State e = State::vertex(t, u);
  const auto curve = fidelity_curve(t, e, e, times, tol);
  SedentarinessReport report;
  report.vertex = u;
  report.times = curve.times;
  report.magnitudes = curve.magnitudes;
  report.truncation = curve.truncation;
  const auto it = std::min_element(curve.magnitudes.begin(), curve.magnitudes.end());
  report.min_magnitude = *it;
  report.argmin_time = curve.times[static_cast<std::size_t>(it - curve.magnitudes.begin())];
  report.analytic_bound = clique_cone_return_bound(t, u);
  return report;
}

}  // namespace tailqw
