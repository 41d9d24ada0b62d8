#include "catk/browder.hpp"

#include <cmath>
#include <cstdio>

namespace catk {

ModelPoint contraction_apply(const ModelPoint& u, double t, const NonexpansiveMap& T,
                             const ModelPoint& y) {
  if (!(t > 0.0 && t <= 1.0)) throw ContractError("contraction parameter outside (0,1]");
  const ConvexBall& ball = T.ball();
  if (!ball.contains(u) || !ball.contains(y))
    throw DomainError("contraction inputs must lie in the ball");
  if (t == 1.0) return u;
  const ModelPoint ty = T.apply(y);
  return geodesic_point(u, ty, 1.0 - t, ball.curv);
}

BrowderPoint solve_fixed_point(const ModelPoint& u, double t, const NonexpansiveMap& T,
                               double tol, std::uint64_t iteration_cap) {
  if (!(t > 0.0 && t < 1.0)) throw ContractError("t must lie in (0,1)");
  if (!(tol > 0.0)) throw ContractError("tolerance must be positive");
  const ConvexBall& ball = T.ball();
  const Curvature& c = ball.curv;
  const double msk = ball.m_sqrt_kappa();
  if (!(msk > 0.0 && msk < M_PI / 2.0))
    throw DomainError("solver requires 0 < M*sqrt(kappa) < pi/2");

  const double q = std::sin((1.0 - t) * msk) / std::sin(msk);
  ModelPoint prev = u;
  ModelPoint cur = contraction_apply(u, t, T, prev);
  for (std::uint64_t k = 1; k <= iteration_cap; ++k) {
    const double step = distance(cur, prev, c);
    if (q / (1.0 - q) * step <= tol) {
      BrowderPoint bp;
      bp.t = t;
      bp.z = cur;
      bp.q_t = q;
      bp.residual = distance(cur, contraction_apply(u, t, T, cur), c);
      return bp;
    }
    prev = cur;
    cur = contraction_apply(u, t, T, prev);
  }
  throw NonconvergenceError("Browder solve exceeded its iteration cap (tol too small for q_t)");
}

std::vector<BrowderPoint> resolvent_family(const ModelPoint& u, const NonexpansiveMap& T,
                                           std::uint64_t i_max, double tol) {
  std::vector<BrowderPoint> family;
  family.reserve(i_max + 1);
  // i = 0 means t = 1: T_1^u is constant at u, fixed point exactly u.
  BrowderPoint z0;
  z0.t = 1.0;
  z0.z = u;
  z0.residual = 0.0;
  z0.q_t = 0.0;
  family.push_back(std::move(z0));
  for (std::uint64_t i = 1; i <= i_max; ++i)
    family.push_back(solve_fixed_point(u, 1.0 / static_cast<double>(i + 1), T, tol));
  return family;
}

std::uint64_t empirical_browder_metastability(const std::vector<BrowderPoint>& family,
                                              double eps, const GFunction& g,
                                              const Curvature& c, double solver_tol) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("eps must lie in (0,1)");
  const double threshold = eps / c.sqrt_kappa() - 4.0 * solver_tol;
  for (std::uint64_t K = 0; K < family.size(); ++K) {
    const BigInt gK = g(BigInt(K));
    if (gK > family.size()) throw ExhaustedError("resolvent family too short for the window");
    const std::uint64_t hi = K + gK.convert_to<std::uint64_t>();
    if (hi >= family.size()) throw ExhaustedError("resolvent family too short for the window");
    bool ok = true;
    for (std::uint64_t i = K; i <= hi && ok; ++i)
      for (std::uint64_t j = i + 1; j <= hi && ok; ++j)
        if (distance(family[i].z, family[j].z, c) > threshold) ok = false;
    if (ok) return K;
  }
  throw ExhaustedError("no window index found within the family");
}

void write_family_csv(std::ostream& os, const std::vector<BrowderPoint>& family,
                      const ModelPoint& u, const Curvature& c) {
  os << "# catk browder family v1\n";
  os << "i,t,d_u_z,residual\n";
  char buf[128];
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, family[i].t,
                  distance(u, family[i].z, c), family[i].residual);
    os << buf;
  }
}

} // namespace catk
