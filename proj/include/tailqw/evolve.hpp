#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tailqw/graph.hpp"
#include "tailqw/linalg.hpp"

namespace tailqw {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kPstThreshold = 1.0 - 1e-8;
// Truncations beyond this length are refused.
inline constexpr int kMaxTailLength = 1 << 14;

/// Walker wavefunction: amplitudes on the finite vertices plus a truncated
/// segment of each tail (tails[i][s] is site s of tail i).
struct State {
  CVector finite;
  std::vector<CVector> tails;

  static State vertex(const TailedGraph& t, int v);
  static State from_finite(const TailedGraph& t, CVector amplitudes);
  double norm() const;
};

/// Initial tail length ceil(2.5 t_max) + 30. Callers double it until the
/// base amplitudes stop changing.
int choose_truncation(double t_max, double tol);

CVector embed(const TailedGraph& t, const State& s, int tail_length);
State restrict_state(const TailedGraph& t, const CVector& v, int tail_length);

/// exp(-i t A_L) psi on the truncation of fixed length L.
State evolve_truncated(const TailedGraph& t, const State& psi, double time, int tail_length);

struct EvolveResult {
  State state;
  int truncation = 0;
};

/// Doubles the tail length until the base-vertex amplitudes at lengths L and
/// 2L agree to `tol` in max-norm. psi0 must be a unit vector supported on the
/// base and the first tail site. Throws NonConvergence past kMaxTailLength.
EvolveResult evolve(const TailedGraph& t, const State& psi0, double time,
                    double tol = kDefaultTolerance);

struct ConvergedOperator {
  int truncation = 0;
  EigDecomposition eig;  // of truncate(t, truncation)
};

/// Truncation (and its eigendecomposition) at which evolve() of psi0 to
/// time t_max settles; PST searches on tailed graphs run on this operator.
ConvergedOperator converged_operator(const TailedGraph& t, const State& psi0, double t_max,
                                     double tol = kDefaultTolerance);

double fidelity(const TailedGraph& t, const State& source, const State& target, double time,
                double tol = kDefaultTolerance);

struct FidelityCurve {
  std::vector<double> times;
  std::vector<double> magnitudes;
  int truncation = 0;
  bool converged = false;
};

/// One truncation for the whole grid, validated at max |t|.
FidelityCurve fidelity_curve(const TailedGraph& t, const State& source, const State& target,
                             std::span<const double> times, double tol = kDefaultTolerance);

struct SedentarinessReport {
  int vertex = 0;
  std::vector<double> times;
  std::vector<double> magnitudes;
  double min_magnitude = 1.0;
  double argmin_time = 0.0;
  std::optional<double> analytic_bound;
  int truncation = 0;
};

/// Lower bound on the return amplitude of a non-attachment vertex when the
/// base is a clique coned by the attachment set: attachments form a coclique,
/// the rest is a unit-weight clique K_c and every attachment is joined to all
/// of it with one weight. The clique's dark eigenvalue -1 carries 1 - 1/c of
/// e_u, so the return amplitude is at least (c - 2) / c.
std::optional<double> clique_cone_return_bound(const TailedGraph& t, int u);

SedentarinessReport sedentariness(const TailedGraph& t, int u, std::span<const double> times,
                                  double tol = kDefaultTolerance);

struct EigenSupportEntry {
  double eigenvalue = 0.0;
  double source_weight = 0.0;  // ||P source||
  double target_weight = 0.0;  // ||P target||
  cplx overlap{0.0, 0.0};      // <P target, P source>
  double phase_error = 0.0;    // |arg(overlap e^{-i lambda tau} / amplitude)|
};

struct PSTCertificate {
  CVector source;
  CVector target;
  double time = 0.0;
  double fidelity = 0.0;
  double threshold = kPstThreshold;
  cplx amplitude{0.0, 0.0};  // <target, exp(-i tau M) source>
  std::vector<EigenSupportEntry> eigen_support;

  // |sum overlap * exp(-i lambda tau)| from the recorded support.
  double reproduced_fidelity() const;
  double max_phase_error() const;
};

/// Certificate data at a given time, without checking the threshold.
PSTCertificate certify_transfer(const EigDecomposition& eig, const CVector& source,
                                const CVector& target, double time,
                                double threshold = kPstThreshold);

/// Scans |<target, exp(-itM) source>| on [0, horizon] with step
/// pi / (40 (lambda_max - lambda_min)), refines each local maximum above
/// threshold - 0.01 by golden-section search to 1e-12 in time and returns
/// the refined peaks that reach `threshold`, in time order. A single-
/// eigenvalue support gives a constant profile and at most one certificate,
/// at t = 0. Throws NoTransferPossible when the amplitude vanishes
/// identically.
std::vector<PSTCertificate> detect_pst(const HermitianMatrix& block, const CVector& source,
                                       const CVector& target, double horizon,
                                       double threshold = kPstThreshold);
std::vector<PSTCertificate> detect_pst(const EigDecomposition& eig, const CVector& source,
                                       const CVector& target, double horizon,
                                       double threshold = kPstThreshold);

}  // namespace tailqw
