#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catk/browder.hpp"
#include "catk/domain.hpp"
#include "catk/halpern.hpp"

namespace catk {

/// Fuzzed spherical configuration: x,y,z pairwise distinct in a ball of
/// diameter bound M, w = r x + (1-r) y on [x,y] (so d(x,w) = (1-r) d(x,y)),
/// v = s x + (1-s) z on [x,z] (so d(x,v) = (1-s) d(x,z)).
struct TriangleConfig {
  ModelPoint x, y, z, w, v;
  double r = 0.0, s = 0.0;
  Curvature curv;
  double M = 0.0;
};

/// The sine/cosine products of the comparison arguments, plus the ratios
/// L1 = sin(d(x,v) rk)/sin(d(x,z) rk) and L2 = sin(d(v,z) rk)/sin(d(x,z) rk).
struct SCQuantities {
  double S1 = 0, S2 = 0, S3 = 0, S4 = 0, S5 = 0, C1 = 0, C2 = 0;
  std::optional<double> L1, L2;
};

SCQuantities compute_sc(const TriangleConfig& cfg);

/// Residuals (LHS - RHS) of the five S/C relations; indices 0..4 correspond to
/// the two sine-difference bounds, the exact identity (two-sided), and the two
/// half-angle refinements.
std::array<double, 5> check_sine_products(const TriangleConfig& cfg);

struct ComparisonResiduals {
  double ratio_comparison = 0.0;
  double interpolant_comparison = 0.0;
  double parametric_comparison = 0.0;
};
ComparisonResiduals check_comparison_props(const TriangleConfig& cfg);

/// Geodesic contraction: d((1-t)x+tz,(1-t)y+tz) vs sin((1-t)M rk)/sin(M rk) d(x,y),
/// plus the weaker bound d(x,y). Returns both residuals.
std::array<double, 2> check_geodesic_contraction(const ModelPoint& x, const ModelPoint& y,
                                              const ModelPoint& z, double t, double M,
                                              const Curvature& c);

struct RightAngleVerdict {
  bool hypothesis_holds = false;
  double distance_residual = 0.0;   ///< d(x,w) - d(x,y)
  double comparison_angle = 0.0;    ///< angle at wbar between ybar and xbar
};
/// Right-angle lemma: w on [x,z]; under cos(d(y,z) rk) >= cos(d(y,w) rk) cos(d(w,z) rk),
/// d(x,w) <= d(x,y) and the comparison angle at wbar is at least pi/2.
RightAngleVerdict check_right_angle(const ModelPoint& x, const ModelPoint& y,
                               const ModelPoint& z, const ModelPoint& w,
                               const Curvature& c);

/// L1/L2 bounds for v = s x + (1-s) z, s in (0,1):
///   0 < 1 - L1 <= L2 cos(d(x,v) rk)  and  L1/(1-L1) <= 1/(s cos(M rk)).
/// Returns {RHS-violations as residuals, 1-L1} for positivity checking.
std::array<double, 3> check_sine_ratio_bounds(const TriangleConfig& cfg);

/// First comparison bound of the y-v proposition (no hypothesis).
double check_yv_comparison(const TriangleConfig& cfg);

struct YvAnchoredVerdict {
  bool hypothesis_holds = false;
  double residual = 0.0;
};
/// Second bound: q with d(q,z) <= d(y,v), under
/// sin^2(d(x,y) rk/2) - sin^2(d(x,v) rk/2) <= 0.
YvAnchoredVerdict check_yv_anchored(const TriangleConfig& cfg, const ModelPoint& q);

/// sin^2((a+b)/2) <= sin^2(a/2) + sin^2(b/2) + (1/2) sin a on [0,pi]^2.
double check_sin_sum(double a, double b);

/// gamma_n^t = sin^2(d(u,z_t) rk/2) - sin^2(d(u,x_{n+1}) rk/2).
double gamma_nt(const ModelPoint& u, const ModelPoint& z_t, const ModelPoint& x_next,
                const Curvature& c);

struct GammaTraceResiduals {
  double item_i = 0.0;   ///< max residual over filtered indices (gamma >= 0)
  double item_ii = 0.0;  ///< max residual over all indices
  double item_iv = 0.0;  ///< max residual of the stepwise recursion
  std::uint64_t checked_i = 0, checked = 0;
};
/// The gamma_n^t inequalities along a trace against a certified Browder point.
GammaTraceResiduals check_gamma_trace(const IterationTrace& tr, const NonexpansiveMap& T,
                             const BrowderPoint& zt, const ModuliSchedule& s, double M);

struct GammaShiftVerdict {
  bool hypothesis_holds = false;
  double max_residual = 0.0;
  std::uint64_t checked = 0;
};
/// gamma_n^i vs gamma_n^j bound under d(u,Tz_i) - d(u,Tz_j) <= delta/sqrt(kappa),
/// checked along the trace.
GammaShiftVerdict check_gamma_shift(const std::vector<BrowderPoint>& family, std::size_t i,
                             std::size_t j, double delta, const ModelPoint& u,
                             const NonexpansiveMap& T, const IterationTrace& tr,
                             double M);

struct WindowInstance {
  std::vector<double> s;     ///< s_1.. (index 0 = s_1)
  std::vector<double> alpha; ///< alpha_1..
  std::vector<double> t;     ///< t_1..
  double Delta = 0.0;
  BigInt Theta;
  GFunction g = GFunction::constant(0);
  double eps = 0.0;
};

struct WindowVerdict {
  bool recurrence_ok = false;
  double max_recurrence_violation = 0.0;
  bool window_ok = false;
  double max_window_value = 0.0;
};
/// Verifies the recurrence s_{n+1} <= (1-alpha_n) s_n + alpha_n t_n + Delta on the
/// inputs (contract), then the window verdict s_n <= eps on [Theta, Theta+g(Theta)].
WindowVerdict check_window_recurrence(const WindowInstance& inst);

// --------------------------------------------------------------------------
// Campaign driver
// --------------------------------------------------------------------------

enum class OracleId {
  sine_products,
  product_identity,
  ratio_comparison,
  interpolant_comparison,
  parametric_comparison,
  contraction_bound,
  right_angle,
  sine_ratio_bounds,
  yv_comparison,
  yv_anchored,
  sin_sum,
  gamma_trace,
  gamma_shift,
  selftest_flip, ///< deliberately corrupted fixture: always reports a violation
};

const char* oracle_name(OracleId id);
std::vector<OracleId> default_oracles();
std::optional<OracleId> oracle_from_name(const std::string& name);

struct CampaignParams {
  double kappa = 1.0;
  double m_sqrt_kappa = 0.8; ///< M * sqrt(kappa) for the sampling ball
  std::uint64_t accepted_target = 10'000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::uint64_t attempts_cap = 1'000; ///< rejection-sampling cap per accepted config
  std::uint64_t trace_steps = 2'000;  ///< for the trace-driven oracles
};

struct WorstConfig {
  std::vector<std::vector<double>> points;
  std::vector<double> params;
};

struct FuzzReport {
  std::string oracle;
  std::uint64_t trials = 0;   ///< sampling attempts
  std::uint64_t accepted = 0; ///< configurations that passed the hypothesis filter
  std::uint64_t skipped = 0;  ///< filtered out
  double max_residual = -std::numeric_limits<double>::infinity();
  double tol = 0.0;
  bool violated = false;
  std::uint64_t seed = 0;
  WorstConfig worst;
};

FuzzReport run_campaign(OracleId id, const CampaignParams& params);

} // namespace catk
