#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "catk/domain.hpp"
#include "catk/gfunction.hpp"

namespace catk {

/// Certified approximation of z_t^u, the unique fixed point of
/// T_t^u(y) = t u + (1-t) T y.
struct BrowderPoint {
  double t = 1.0;
  ModelPoint z;
  double residual = 0.0; ///< measured d(z, T_t^u z), at most the requested tol
  double q_t = 0.0;      ///< contraction factor sin((1-t) M sqrt k)/sin(M sqrt k)
};

/// T_t^u(y) = t u + (1-t) T y, the geodesic point at parameter 1-t from u toward Ty.
ModelPoint contraction_apply(const ModelPoint& u, double t, const NonexpansiveMap& T,
                             const ModelPoint& y);

/// Picard iteration from y_0 = u with the Banach a-posteriori stopping rule
/// q/(1-q) d(y_k, y_{k-1}) <= tol, certifying d(z, z_t^u) <= tol.
BrowderPoint solve_fixed_point(const ModelPoint& u, double t, const NonexpansiveMap& T,
                               double tol, std::uint64_t iteration_cap = 10'000'000);

/// z_i^u for t_i = 1/(i+1), i = 0..i_max. t_0 = 1 sits outside (0,1); there the
/// contraction is constant at u, so the entry is exactly z = u.
std::vector<BrowderPoint> resolvent_family(const ModelPoint& u, const NonexpansiveMap& T,
                                           std::uint64_t i_max, double tol);

/// Smallest K such that all pairwise distances within [K, K+g(K)] are at most
/// eps/sqrt(kappa) - 4*solver_tol (certified approximants must not flip window
/// verdicts). Throws ExhaustedError when the family is too short.
std::uint64_t empirical_browder_metastability(const std::vector<BrowderPoint>& family,
                                              double eps, const GFunction& g,
                                              const Curvature& c, double solver_tol);

/// CSV export: columns i, t_i, d(u, z_i), residual.
void write_family_csv(std::ostream& os, const std::vector<BrowderPoint>& family,
                      const ModelPoint& u, const Curvature& c);

} // namespace catk
