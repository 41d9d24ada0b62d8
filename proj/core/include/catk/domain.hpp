#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "catk/geometry.hpp"
#include "catk/rng.hpp"

namespace catk {

/// Closed geodesic ball serving as the bounded closed convex set C.
/// radius < D_kappa/4, so the diameter bound M = 2*radius stays below D_kappa/2
/// and the ball is geodesically convex.
struct ConvexBall {
  ModelPoint center;
  double radius = 0.0;
  Curvature curv;

  ConvexBall() = default;
  ConvexBall(ModelPoint center_, double radius_, const Curvature& c);

  /// M = 2*radius, the diameter upper bound used by every rate formula.
  double diameter_bound() const { return 2.0 * radius; }
  double m_sqrt_kappa() const { return diameter_bound() * curv.sqrt_kappa(); }
  bool contains(const ModelPoint& p, double tol = 1e-12) const;
};

/// Reproducible point in the ball: uniform direction at the center, radius with
/// density proportional to the spherical area element.
ModelPoint sample_in_ball(const ConvexBall& ball, Rng& rng);

/// Closed catalog of nonexpansive self-maps of a ball with known fixed points.
class NonexpansiveMap {
public:
  struct Rotation {
    Eigen::VectorXd axis; ///< unit axis through the ball center (ambient dim 3)
    double angle = 0.0;
  };
  struct GeodesicPull {
    ModelPoint anchor;
    double rho = 0.5; ///< contraction parameter in (0,1)
  };
  struct Composition {
    std::vector<NonexpansiveMap> factors; ///< applied left-to-right
  };

  static NonexpansiveMap rotation(const ConvexBall& ball, double angle);
  static NonexpansiveMap geodesic_pull(const ConvexBall& ball, ModelPoint anchor,
                                       double rho);
  static NonexpansiveMap composition(const ConvexBall& ball,
                                     std::vector<NonexpansiveMap> factors);

  /// T(p); requires p in the ball, returns a point in the ball.
  ModelPoint apply(const ModelPoint& p) const;

  /// The map's known fixed point in the ball (rotation -> center,
  /// pull -> anchor, composition -> center when every factor fixes it).
  ModelPoint fixed_point() const;

  const ConvexBall& ball() const { return *ball_; }
  const std::variant<Rotation, GeodesicPull, Composition>& variant() const {
    return v_;
  }
  std::string describe() const;

private:
  NonexpansiveMap(std::shared_ptr<const ConvexBall> ball,
                  std::variant<Rotation, GeodesicPull, Composition> v)
      : ball_(std::move(ball)), v_(std::move(v)) {}

  ModelPoint apply_unchecked(const ModelPoint& p) const;
  bool fixes_center() const;

  std::shared_ptr<const ConvexBall> ball_;
  std::variant<Rotation, GeodesicPull, Composition> v_;
};

struct NonexpansivenessReport {
  double max_expansion_ratio = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t pairs_used = 0;
};

/// Draws `samples` random pairs and reports max d(Tx,Ty)/d(x,y) over pairs with
/// d(x,y) > 1e-8; a violation is a ratio above 1 + tol. Deterministic in
/// (seed, samples).
NonexpansivenessReport verify_nonexpansive(const NonexpansiveMap& map,
                                           const ConvexBall& ball,
                                           std::uint64_t samples, double tol,
                                           std::uint64_t seed);

} // namespace catk
