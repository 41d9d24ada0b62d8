#include "catk/domain.hpp"

#include <cmath>

namespace catk {

ConvexBall::ConvexBall(ModelPoint center_, double radius_, const Curvature& c)
    : center(std::move(center_)), radius(radius_), curv(c) {
  if (center.ambient_dim() != c.ambient_dim())
    throw ContractError("ball center dimension does not match the space");
  if (std::abs(center.direction.norm() - 1.0) > kUnitTol)
    throw InvalidPointError("ball center is not a model point");
  if (!(radius > 0.0)) throw ContractError("ball radius must be positive");
  if (!(radius < c.diameter() / 4.0))
    throw ContractError("ball radius must stay below D_kappa/4");
}

bool ConvexBall::contains(const ModelPoint& p, double tol) const {
  return distance(center, p, curv) <= radius + tol;
}

ModelPoint sample_in_ball(const ConvexBall& ball, Rng& rng) {
  const int ambient = ball.curv.ambient_dim();
  // Tangent direction at the center: uniform unit vector orthogonal to it,
  // via rejection sampling in the cube.
  Eigen::VectorXd tangent(ambient);
  for (;;) {
    for (int i = 0; i < ambient; ++i) tangent[i] = rng.uniform(-1.0, 1.0);
    tangent -= tangent.dot(ball.center.direction) * ball.center.direction;
    const double n = tangent.norm();
    if (n > 1e-3 && n <= 1.0) {
      tangent /= n;
      break;
    }
  }
  // Geodesic radius with density ~ sin(angular radius): invert 1 - cos.
  const double amax = ball.radius * ball.curv.sqrt_kappa();
  const double u = rng.next_double();
  const double a = std::acos(1.0 - u * (1.0 - std::cos(amax)));
  Eigen::VectorXd dir = std::cos(a) * ball.center.direction + std::sin(a) * tangent;
  dir /= dir.norm();
  return ModelPoint(std::move(dir));
}

NonexpansiveMap NonexpansiveMap::rotation(const ConvexBall& ball, double angle) {
  if (ball.curv.ambient_dim() != 3)
    throw ContractError("rotation maps are defined for ambient dimension 3");
  Rotation r;
  r.axis = ball.center.direction; // axis through the ball center
  r.angle = angle;
  return NonexpansiveMap(std::make_shared<ConvexBall>(ball), std::move(r));
}

NonexpansiveMap NonexpansiveMap::geodesic_pull(const ConvexBall& ball,
                                               ModelPoint anchor, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ContractError("pull factor must lie in (0,1)");
  if (!ball.contains(anchor)) throw ContractError("pull anchor must lie in the ball");
  return NonexpansiveMap(std::make_shared<ConvexBall>(ball),
                         GeodesicPull{std::move(anchor), rho});
}

NonexpansiveMap NonexpansiveMap::composition(const ConvexBall& ball,
                                             std::vector<NonexpansiveMap> factors) {
  if (factors.empty()) throw ContractError("composition needs at least one factor");
  return NonexpansiveMap(std::make_shared<ConvexBall>(ball),
                         Composition{std::move(factors)});
}

ModelPoint NonexpansiveMap::apply(const ModelPoint& p) const {
  if (!ball_->contains(p)) throw DomainError("point outside the map's ball");
  return apply_unchecked(p);
}

ModelPoint NonexpansiveMap::apply_unchecked(const ModelPoint& p) const {
  if (const auto* r = std::get_if<Rotation>(&v_)) {
    // Rodrigues rotation about the axis through the ball center.
    const Eigen::Vector3d k = r->axis.head<3>();
    const Eigen::Vector3d v = p.direction.head<3>();
    const Eigen::Vector3d rotated = v * std::cos(r->angle) +
                                    k.cross(v) * std::sin(r->angle) +
                                    k * (k.dot(v)) * (1.0 - std::cos(r->angle));
    Eigen::VectorXd out = rotated;
    out /= out.norm();
    return ModelPoint(std::move(out));
  }
  if (const auto* g = std::get_if<GeodesicPull>(&v_)) {
    return geodesic_point(p, g->anchor, g->rho, ball_->curv);
  }
  const auto& comp = std::get<Composition>(v_);
  ModelPoint cur = p;
  for (const auto& f : comp.factors) cur = f.apply_unchecked(cur);
  return cur;
}

bool NonexpansiveMap::fixes_center() const {
  if (std::holds_alternative<Rotation>(v_)) return true;
  if (const auto* g = std::get_if<GeodesicPull>(&v_))
    return distance(g->anchor, ball_->center, ball_->curv) <= 1e-12;
  const auto& comp = std::get<Composition>(v_);
  for (const auto& f : comp.factors)
    if (!f.fixes_center()) return false;
  return true;
}

ModelPoint NonexpansiveMap::fixed_point() const {
  if (std::holds_alternative<Rotation>(v_)) return ball_->center;
  if (const auto* g = std::get_if<GeodesicPull>(&v_)) return g->anchor;
  if (fixes_center()) return ball_->center;
  throw UnsupportedAnalysisError(
      "composition has no analytically known fixed point (factors do not all fix the center)");
}

std::string NonexpansiveMap::describe() const {
  if (const auto* r = std::get_if<Rotation>(&v_))
    return "rotation(angle=" + std::to_string(r->angle) + ")";
  if (const auto* g = std::get_if<GeodesicPull>(&v_))
    return "pull(rho=" + std::to_string(g->rho) + ")";
  const auto& comp = std::get<Composition>(v_);
  std::string out = "composition(";
  for (std::size_t i = 0; i < comp.factors.size(); ++i) {
    if (i) out += ", ";
    out += comp.factors[i].describe();
  }
  return out + ")";
}

NonexpansivenessReport verify_nonexpansive(const NonexpansiveMap& map,
                                           const ConvexBall& ball,
                                           std::uint64_t samples, double tol,
                                           std::uint64_t seed) {
  if (samples < 1) throw ContractError("verify_nonexpansive needs at least one sample");
  NonexpansivenessReport rep;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = Rng::substream(seed, i);
    const ModelPoint x = sample_in_ball(ball, rng);
    const ModelPoint y = sample_in_ball(ball, rng);
    const double dxy = distance(x, y, ball.curv);
    if (dxy <= 1e-8) continue;
    const double dT = distance(map.apply(x), map.apply(y), ball.curv);
    const double ratio = dT / dxy;
    rep.max_expansion_ratio = std::max(rep.max_expansion_ratio, ratio);
    if (ratio > 1.0 + tol) ++rep.violations;
    ++rep.pairs_used;
  }
  return rep;
}

} // namespace catk
