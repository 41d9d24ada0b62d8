#include "catk/oracles.hpp"

#include <cmath>

namespace catk {

namespace {

double sin2h(double angular) { // sin^2(angular/2)
  const double s = std::sin(angular / 2.0);
  return s * s;
}

struct Angles {
  double xy, xz, yz, xw, yw, xv, zv, wv, yv;
};

Angles angles_of(const TriangleConfig& cfg) {
  Angles a;
  a.xy = angular_distance(cfg.x, cfg.y);
  a.xz = angular_distance(cfg.x, cfg.z);
  a.yz = angular_distance(cfg.y, cfg.z);
  a.xw = angular_distance(cfg.x, cfg.w);
  a.yw = angular_distance(cfg.y, cfg.w);
  a.xv = angular_distance(cfg.x, cfg.v);
  a.zv = angular_distance(cfg.z, cfg.v);
  a.wv = angular_distance(cfg.w, cfg.v);
  a.yv = angular_distance(cfg.y, cfg.v);
  return a;
}

} // namespace

SCQuantities compute_sc(const TriangleConfig& cfg) {
  const Angles a = angles_of(cfg);
  SCQuantities q;
  q.S1 = std::sin(a.xw) * std::sin(a.xv);
  q.S2 = std::sin(a.xy) * std::sin(a.xz);
  q.S3 = std::sin(a.xw) * std::sin(a.xz);
  q.S4 = std::sin(a.yw) * std::sin(a.xz);
  q.S5 = std::sin(a.xw) * std::sin(a.zv);
  q.C1 = std::cos(a.xw) * std::cos(a.xv);
  q.C2 = std::cos(a.xy) * std::cos(a.xz);
  if (a.xz > 0.0) {
    q.L1 = std::sin(a.xv) / std::sin(a.xz);
    q.L2 = std::sin(a.zv) / std::sin(a.xz);
  }
  return q;
}

std::array<double, 5> check_sine_products(const TriangleConfig& cfg) {
  const Angles a = angles_of(cfg);
  const SCQuantities q = compute_sc(cfg);
  std::array<double, 5> res;
  res[0] = (q.S2 - q.S3) - q.S4 * std::cos(a.xw);
  res[1] = (q.S3 - q.S1) - q.S5 * std::cos(a.xv);
  res[2] = (q.S2 * q.C1 - q.S1 * q.C2) -
           (q.S4 * std::cos(a.xv) + q.S5 * std::cos(a.xy)); // exact identity
  res[3] = (q.S2 - q.S3 - q.S4 * std::cos(a.xv)) -
           2.0 * q.S4 * (sin2h(a.xv) - sin2h(a.xw));
  res[4] = (q.S3 - q.S1 - q.S5 * std::cos(a.xy)) -
           2.0 * q.S5 * (sin2h(a.xy) - sin2h(a.xv));
  return res;
}

ComparisonResiduals check_comparison_props(const TriangleConfig& cfg) {
  const Angles a = angles_of(cfg);
  const SCQuantities q = compute_sc(cfg);
  const double mrk = cfg.M * cfg.curv.sqrt_kappa();
  ComparisonResiduals out;

  const double lhs = sin2h(a.wv);
  out.ratio_comparison = lhs - (q.S1 / q.S2 * sin2h(a.yz) + 0.5 * (1.0 - q.C1) -
                      q.S1 / (2.0 * q.S2) * (1.0 - q.C2));

  out.interpolant_comparison = lhs - (std::sin(a.xw) / std::sin(a.xy) * sin2h(a.yz) +
                       std::sin(a.yw) / std::sin(a.xy) * (sin2h(a.xv) - sin2h(a.xw)) +
                       std::sin(a.zv) / std::sin(a.xz) * sin2h(a.xy));

  const double sM = std::sin(mrk);
  out.parametric_comparison =
      lhs - (std::sin((1.0 - cfg.r) * mrk) / sM * sin2h(a.yz) +
             std::sin(cfg.r * mrk) / sM * std::max(sin2h(a.xv) - sin2h(a.xw), 0.0) +
             std::sin(cfg.s * mrk) / sM * sin2h(mrk));
  return out;
}

std::array<double, 2> check_geodesic_contraction(const ModelPoint& x, const ModelPoint& y,
                                              const ModelPoint& z, double t, double M,
                                              const Curvature& c) {
  if (!(t > 0.0 && t < 1.0)) throw ContractError("t must lie in (0,1)");
  const double mrk = M * c.sqrt_kappa();
  const ModelPoint p1 = geodesic_point(x, z, t, c);
  const ModelPoint p2 = geodesic_point(y, z, t, c);
  const double lhs = distance(p1, p2, c);
  const double dxy = distance(x, y, c);
  const double factor = std::sin((1.0 - t) * mrk) / std::sin(mrk);
  return {lhs - factor * dxy, lhs - dxy};
}

RightAngleVerdict check_right_angle(const ModelPoint& x, const ModelPoint& y,
                               const ModelPoint& z, const ModelPoint& w,
                               const Curvature& c) {
  const double rk = c.sqrt_kappa();
  RightAngleVerdict v;
  const double dyz = distance(y, z, c), dyw = distance(y, w, c), dwz = distance(w, z, c);
  v.hypothesis_holds =
      std::cos(dyz * rk) >= std::cos(dyw * rk) * std::cos(dwz * rk);
  if (!v.hypothesis_holds) return v;
  v.distance_residual = distance(x, w, c) - distance(x, y, c);

  // Comparison angle at wbar between ybar and xbar, with wbar the comparison
  // point of w on [xbar, zbar].
  const double dxy = distance(x, y, c), dxz = distance(x, z, c), dxw = distance(x, w, c);
  v.comparison_angle = std::numeric_limits<double>::quiet_NaN();
  if (dxz > 0.0 && dxw > 1e-12 && dwz > 1e-12 && dyw > 1e-12) {
    const ComparisonTriangle tri = comparison_triangle(dxy, dyz, dxz, c);
    const ModelPoint wbar = geodesic_point(tri.xbar, tri.zbar, dxw / dxz, tri.curv);
    v.comparison_angle = vertex_angle(wbar, tri.ybar, tri.xbar, tri.curv);
  }
  return v;
}

std::array<double, 3> check_sine_ratio_bounds(const TriangleConfig& cfg) {
  const Angles a = angles_of(cfg);
  const double mrk = cfg.M * cfg.curv.sqrt_kappa();
  const double L1 = std::sin(a.xv) / std::sin(a.xz);
  const double L2 = std::sin(a.zv) / std::sin(a.xz);
  const double one_minus = 1.0 - L1;
  const double res20 = one_minus - L2 * std::cos(a.xv);
  const double res21 = L1 / one_minus - 1.0 / (cfg.s * std::cos(mrk));
  return {res20, res21, one_minus};
}

double check_yv_comparison(const TriangleConfig& cfg) {
  const Angles a = angles_of(cfg);
  const double L1 = std::sin(a.xv) / std::sin(a.xz);
  const double L2 = std::sin(a.zv) / std::sin(a.xz);
  const double lhs = sin2h(a.yv);
  const double rhs1 =
      L1 * sin2h(a.yz) + 0.5 * (1.0 - L1) - 0.5 * std::cos(a.xy) * L2;
  const double rhs2 =
      L2 * sin2h(a.xy) + 0.5 * (1.0 - L1 - L2) + L1 * sin2h(a.yz);
  return std::max(lhs - rhs1, std::abs(rhs1 - rhs2));
}

YvAnchoredVerdict check_yv_anchored(const TriangleConfig& cfg, const ModelPoint& q) {
  const Angles a = angles_of(cfg);
  const double mrk = cfg.M * cfg.curv.sqrt_kappa();
  YvAnchoredVerdict v;
  const double dqz = angular_distance(q, cfg.z);
  v.hypothesis_holds = (sin2h(a.xy) - sin2h(a.xv) <= 0.0) && (dqz <= a.yv);
  if (!v.hypothesis_holds) return v;
  const double ayq = angular_distance(cfg.y, q);
  const double rhs = sin2h(a.xy) - sin2h(a.xv) +
                     1.0 / (cfg.s * std::cos(mrk)) *
                         (sin2h(ayq) + std::sin(ayq / 2.0));
  v.residual = sin2h(a.yv) - rhs;
  return v;
}

double check_sin_sum(double a, double b) {
  if (!(a >= 0.0 && a <= M_PI && b >= 0.0 && b <= M_PI))
    throw ContractError("sin-sum arguments must lie in [0,pi]");
  const double l = sin2h(a + b);
  return l - (sin2h(a) + sin2h(b) + 0.5 * std::sin(a));
}

double gamma_nt(const ModelPoint& u, const ModelPoint& z_t, const ModelPoint& x_next,
                const Curvature& c) {
  const double rk = c.sqrt_kappa();
  return sin2h(distance(u, z_t, c) * rk) - sin2h(distance(u, x_next, c) * rk);
}

GammaTraceResiduals check_gamma_trace(const IterationTrace& tr, const NonexpansiveMap& T,
                             const BrowderPoint& zt, const ModuliSchedule& s, double M) {
  (void)T;
  (void)s; // the trace already carries d(x_n, T x_n) and lambda_{n+1}
  if (!tr.points_complete) throw ContractError("gamma_trace checks need the stored trace");
  const Curvature& c = tr.curv;
  const double rk = c.sqrt_kappa();
  const double mrk = M * rk;
  const double t = zt.t;
  GammaTraceResiduals out;
  out.item_i = out.item_ii = out.item_iv = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n + 1 < tr.points.size(); ++n) {
    const ModelPoint& xn = tr.points[n];
    const ModelPoint& xn1 = tr.points[n + 1];
    const double g = gamma_nt(tr.u, zt.z, xn1, c);
    const double dtx = tr.map_dist[n + 1] * rk; // d(x_{n+1}, T x_{n+1}) * rk
    const double a_n = (sin2h(dtx) + std::sin(dtx / 2.0)) / std::cos(mrk);
    const double sz1 = sin2h(distance(xn1, zt.z, c) * rk);
    out.item_ii = std::max(out.item_ii, g - a_n / t);
    ++out.checked;
    if (g >= 0.0) {
      out.item_i = std::max(out.item_i, g - (a_n / t - sz1));
      ++out.checked_i;
    }
    const double lam = tr.lambda_next[n];
    const double sz0 = sin2h(distance(xn, zt.z, c) * rk);
    const double rhs = std::sin((1.0 - lam) * mrk) / std::sin(mrk) * sz0 +
                       std::sin(lam * mrk) / std::sin(mrk) * std::max(g, 0.0) +
                       std::sin(t * mrk) / std::sin(mrk) * sin2h(mrk);
    out.item_iv = std::max(out.item_iv, sz1 - rhs);
  }
  return out;
}

GammaShiftVerdict check_gamma_shift(const std::vector<BrowderPoint>& family, std::size_t i,
                             std::size_t j, double delta, const ModelPoint& u,
                             const NonexpansiveMap& T, const IterationTrace& tr,
                             double M) {
  if (i >= family.size() || j >= family.size())
    throw ContractError("family indices out of range");
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("delta must lie in (0,1)");
  if (!tr.points_complete) throw ContractError("gamma_shift checks need the stored trace");
  const Curvature& c = tr.curv;
  const double rk = c.sqrt_kappa();
  const double mrk = M * rk;
  GammaShiftVerdict v;
  const double gap = distance(u, T.apply(family[i].z), c) -
                     distance(u, T.apply(family[j].z), c);
  v.hypothesis_holds = gap <= delta / rk;
  if (!v.hypothesis_holds) return v;
  const double extra = sin2h(mrk / (static_cast<double>(j) + 1.0)) +
                       2.0 * std::sin(mrk / (2.0 * (static_cast<double>(j) + 1.0))) +
                       sin2h(delta) + 2.0 * std::sin(delta / 2.0) * std::sin(mrk / 2.0);
  v.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n + 1 < tr.points.size(); ++n) {
    const ModelPoint& xn1 = tr.points[n + 1];
    const double gi = gamma_nt(u, family[i].z, xn1, c);
    const double gj = gamma_nt(u, family[j].z, xn1, c);
    v.max_residual = std::max(v.max_residual, gi - (gj + extra));
    ++v.checked;
  }
  return v;
}

WindowVerdict check_window_recurrence(const WindowInstance& inst) {
  WindowVerdict v;
  if (inst.s.size() < 2 || inst.alpha.size() + 1 < inst.s.size() ||
      inst.t.size() + 1 < inst.s.size())
    throw ContractError("window instance sequences too short");
  v.max_recurrence_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < inst.s.size(); ++n) {
    const double a = inst.alpha[n - 1];
    if (!(a >= 0.0 && a <= 1.0)) throw ContractError("alpha_n outside [0,1]");
    const double rhs = (1.0 - a) * inst.s[n - 1] + a * inst.t[n - 1] + inst.Delta;
    v.max_recurrence_violation = std::max(v.max_recurrence_violation,
                                          inst.s[n] - rhs);
  }
  v.recurrence_ok = v.max_recurrence_violation <= 1e-10;
  if (!v.recurrence_ok)
    throw ContractError("supplied sequences violate the window recurrence (bad fixture)");

  const BigInt hi_b = inst.Theta + inst.g(inst.Theta);
  if (inst.Theta < 1 || hi_b > BigInt(inst.s.size()))
    throw ContractError("window exceeds the supplied sequence");
  const std::uint64_t lo = inst.Theta.convert_to<std::uint64_t>();
  const std::uint64_t hi = hi_b.convert_to<std::uint64_t>();
  v.max_window_value = 0.0;
  for (std::uint64_t n = lo; n <= hi; ++n)
    v.max_window_value = std::max(v.max_window_value, inst.s[n - 1]);
  v.window_ok = v.max_window_value <= inst.eps;
  return v;
}

// ---------------------------------------------------------------------------
// Campaign driver
// ---------------------------------------------------------------------------

const char* oracle_name(OracleId id) {
  switch (id) {
    case OracleId::sine_products: return "sine_products";
    case OracleId::product_identity: return "product_identity";
    case OracleId::ratio_comparison: return "ratio_comparison";
    case OracleId::interpolant_comparison: return "interpolant_comparison";
    case OracleId::parametric_comparison: return "parametric_comparison";
    case OracleId::contraction_bound: return "contraction_bound";
    case OracleId::right_angle: return "right_angle";
    case OracleId::sine_ratio_bounds: return "sine_ratio_bounds";
    case OracleId::yv_comparison: return "yv_comparison";
    case OracleId::yv_anchored: return "yv_anchored";
    case OracleId::sin_sum: return "sin_sum";
    case OracleId::gamma_trace: return "gamma_trace";
    case OracleId::gamma_shift: return "gamma_shift";
    case OracleId::selftest_flip: return "selftest_flip";
  }
  return "unknown";
}

std::vector<OracleId> default_oracles() {
  return {OracleId::sine_products, OracleId::product_identity, OracleId::ratio_comparison,
          OracleId::interpolant_comparison, OracleId::parametric_comparison, OracleId::contraction_bound, OracleId::right_angle,
          OracleId::sine_ratio_bounds, OracleId::yv_comparison, OracleId::yv_anchored, OracleId::sin_sum,
          OracleId::gamma_trace, OracleId::gamma_shift};
}

std::optional<OracleId> oracle_from_name(const std::string& name) {
  for (OracleId id : default_oracles())
    if (name == oracle_name(id)) return id;
  if (name == oracle_name(OracleId::selftest_flip)) return OracleId::selftest_flip;
  return std::nullopt;
}

namespace {

struct SampledBall {
  ConvexBall ball;
  double M;
};

SampledBall make_ball(const CampaignParams& p) {
  const Curvature c(p.kappa, 2);
  const double M = p.m_sqrt_kappa / c.sqrt_kappa();
  Eigen::VectorXd pole(3);
  pole << 0.0, 0.0, 1.0;
  return {ConvexBall(ModelPoint(pole), M / 2.0, c), M};
}

ModelPoint sample_distinct(const ConvexBall& ball, Rng& rng,
                           std::initializer_list<const ModelPoint*> others) {
  for (;;) {
    ModelPoint p = sample_in_ball(ball, rng);
    bool ok = true;
    for (const ModelPoint* o : others)
      if (angular_distance(p, *o) < 1e-6) ok = false;
    if (ok) return p;
  }
}

TriangleConfig sample_config(const ConvexBall& ball, double M, Rng& rng,
                             bool interior_s) {
  TriangleConfig cfg;
  cfg.curv = ball.curv;
  cfg.M = M;
  cfg.x = sample_in_ball(ball, rng);
  cfg.y = sample_distinct(ball, rng, {&cfg.x});
  cfg.z = sample_distinct(ball, rng, {&cfg.x, &cfg.y});
  cfg.r = rng.next_double();
  cfg.s = interior_s ? rng.uniform(1e-3, 1.0 - 1e-3) : rng.next_double();
  cfg.w = geodesic_point(cfg.x, cfg.y, 1.0 - cfg.r, cfg.curv);
  cfg.v = geodesic_point(cfg.x, cfg.z, 1.0 - cfg.s, cfg.curv);
  return cfg;
}

void record_points(WorstConfig& w, std::initializer_list<const ModelPoint*> pts,
                   std::initializer_list<double> params) {
  w.points.clear();
  for (const ModelPoint* p : pts) {
    std::vector<double> coords(p->direction.data(),
                               p->direction.data() + p->direction.size());
    w.points.push_back(std::move(coords));
  }
  w.params.assign(params);
}

FuzzReport run_geometric_campaign(OracleId id, const CampaignParams& p) {
  FuzzReport rep;
  rep.oracle = oracle_name(id);
  rep.tol = p.tol;
  rep.seed = p.seed;
  const SampledBall sb = make_ball(p);

  for (std::uint64_t k = 0; k < p.accepted_target; ++k) {
    Rng rng = Rng::substream(p.seed, k);
    bool got = false;
    for (std::uint64_t attempt = 0; attempt < p.attempts_cap && !got; ++attempt) {
      ++rep.trials;
      double residual = -std::numeric_limits<double>::infinity();
      TriangleConfig cfg;
      switch (id) {
        case OracleId::sine_products: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          const auto res = check_sine_products(cfg);
          residual = std::max({res[0], res[1], std::abs(res[2]), res[3], res[4]});
          got = true;
          break;
        }
        case OracleId::product_identity: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          residual = std::abs(check_sine_products(cfg)[2]);
          got = true;
          break;
        }
        case OracleId::ratio_comparison: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          residual = check_comparison_props(cfg).ratio_comparison;
          got = true;
          break;
        }
        case OracleId::interpolant_comparison: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          residual = check_comparison_props(cfg).interpolant_comparison;
          got = true;
          break;
        }
        case OracleId::parametric_comparison: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          residual = check_comparison_props(cfg).parametric_comparison;
          got = true;
          break;
        }
        case OracleId::contraction_bound: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          const double t = rng.uniform(1e-6, 1.0 - 1e-6);
          const auto res =
              check_geodesic_contraction(cfg.x, cfg.y, cfg.z, t, sb.M, cfg.curv);
          residual = std::max(res[0], res[1]);
          cfg.r = t;
          got = true;
          break;
        }
        case OracleId::right_angle: {
          cfg = sample_config(sb.ball, sb.M, rng, false);
          const double tw = rng.uniform(0.02, 0.98);
          const ModelPoint w = geodesic_point(cfg.x, cfg.z, tw, cfg.curv);
          if (angular_distance(w, cfg.y) < 1e-6) break;
          const RightAngleVerdict v = check_right_angle(cfg.x, cfg.y, cfg.z, w, cfg.curv);
          if (!v.hypothesis_holds) {
            ++rep.skipped;
            break;
          }
          residual = v.distance_residual;
          if (!std::isnan(v.comparison_angle))
            residual = std::max(residual,
                                (M_PI / 2.0 - v.comparison_angle) - 1e-6);
          cfg.w = w;
          got = true;
          break;
        }
        case OracleId::sine_ratio_bounds: {
          cfg = sample_config(sb.ball, sb.M, rng, true);
          const auto res = check_sine_ratio_bounds(cfg);
          residual = (res[2] > 0.0) ? std::max(res[0], res[1]) : 1.0;
          got = true;
          break;
        }
        case OracleId::yv_comparison: {
          cfg = sample_config(sb.ball, sb.M, rng, true);
          residual = check_yv_comparison(cfg);
          got = true;
          break;
        }
        case OracleId::yv_anchored: {
          cfg = sample_config(sb.ball, sb.M, rng, true);
          const ModelPoint q = sample_in_ball(sb.ball, rng);
          const YvAnchoredVerdict v = check_yv_anchored(cfg, q);
          if (!v.hypothesis_holds) {
            ++rep.skipped;
            break;
          }
          residual = v.residual;
          got = true;
          break;
        }
        case OracleId::sin_sum: {
          const double a = rng.uniform(0.0, M_PI);
          const double b = rng.uniform(0.0, M_PI);
          residual = check_sin_sum(a, b);
          cfg.r = a;
          cfg.s = b;
          got = true;
          break;
        }
        case OracleId::selftest_flip: {
          const double a = rng.uniform(0.1, M_PI - 0.1);
          const double b = rng.uniform(0.1, M_PI - 0.1);
          residual = -check_sin_sum(a, b); // flipped on purpose
          got = true;
          break;
        }
        default:
          throw ContractError("not a geometric oracle");
      }
      if (got) {
        ++rep.accepted;
        if (residual > rep.max_residual) {
          rep.max_residual = residual;
          record_points(rep.worst, {&cfg.x, &cfg.y, &cfg.z, &cfg.w, &cfg.v},
                        {cfg.r, cfg.s});
        }
      }
    }
  }
  rep.violated = rep.max_residual > rep.tol;
  return rep;
}

FuzzReport run_trace_campaign(OracleId id, const CampaignParams& p) {
  FuzzReport rep;
  rep.oracle = oracle_name(id);
  rep.tol = p.tol;
  rep.seed = p.seed;
  const SampledBall sb = make_ball(p);
  const ConvexBall& ball = sb.ball;
  const Curvature& c = ball.curv;

  // A pull map with an off-center anchor, start point elsewhere in the ball.
  Rng rng = Rng::substream(p.seed, 0);
  const ModelPoint anchor =
      geodesic_point(ball.center, sample_in_ball(ball, rng), 0.6, c);
  const NonexpansiveMap T = NonexpansiveMap::geodesic_pull(ball, anchor, 0.5);
  ModelPoint u = sample_in_ball(ball, rng);
  const ModuliSchedule sched = harmonic_schedule();
  const IterationTrace tr = iterate(u, T, sched, p.trace_steps);
  const double tol_solver = 1e-12 * sb.M;

  if (id == OracleId::gamma_trace) {
    for (double t : {0.5, 0.25, 0.125}) {
      const BrowderPoint zt = solve_fixed_point(u, t, T, tol_solver);
      const GammaTraceResiduals r = check_gamma_trace(tr, T, zt, sched, sb.M);
      rep.trials += r.checked;
      rep.accepted += r.checked;
      rep.skipped += r.checked - r.checked_i; // indices filtered out of item (i)
      rep.max_residual =
          std::max({rep.max_residual, r.item_i, r.item_ii, r.item_iv});
    }
  } else if (id == OracleId::gamma_shift) {
    const std::size_t imax = 16;
    std::vector<BrowderPoint> family = resolvent_family(u, T, imax, tol_solver);
    const double rk = c.sqrt_kappa();
    for (std::size_t j = 0; j + 1 <= imax; ++j) {
      const std::size_t i = j + 1;
      const double gap = distance(u, T.apply(family[i].z), c) -
                         distance(u, T.apply(family[j].z), c);
      double delta = std::max(1e-6, gap * rk + 1e-6);
      if (delta >= 1.0) {
        ++rep.skipped;
        continue;
      }
      const GammaShiftVerdict v =
          check_gamma_shift(family, i, j, delta, u, T, tr, sb.M);
      rep.trials += v.checked;
      if (!v.hypothesis_holds) {
        ++rep.skipped;
        continue;
      }
      rep.accepted += v.checked;
      rep.max_residual = std::max(rep.max_residual, v.max_residual);
    }
  } else {
    throw ContractError("not a trace oracle");
  }
  rep.violated = rep.max_residual > rep.tol;
  return rep;
}

} // namespace

FuzzReport run_campaign(OracleId id, const CampaignParams& params) {
  switch (id) {
    case OracleId::gamma_trace:
    case OracleId::gamma_shift:
      return run_trace_campaign(id, params);
    default:
      return run_geometric_campaign(id, params);
  }
}

} // namespace catk
