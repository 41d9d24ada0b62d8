#include "catk/geometry.hpp"

#include <cmath>

namespace catk {

namespace {

void require_same_space(const ModelPoint& p, const ModelPoint& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw ContractError("model points live in different ambient dimensions");
}

void require_unit(const ModelPoint& p) {
  if (std::abs(p.direction.norm() - 1.0) > kUnitTol)
    throw InvalidPointError("direction vector is not unit length within 1e-12");
}

} // namespace

ModelPoint make_point(Eigen::VectorXd dir) {
  ModelPoint p(std::move(dir));
  if (p.ambient_dim() < 3) throw ContractError("ambient dimension must be at least 3");
  require_unit(p);
  return p;
}

ModelPoint make_point_normalized(Eigen::VectorXd dir) {
  const double n = dir.norm();
  if (!(n > 0.0)) throw InvalidPointError("cannot normalize the zero vector");
  return ModelPoint(dir / n);
}

double angular_distance(const ModelPoint& p, const ModelPoint& q) {
  require_same_space(p, q);
  require_unit(p);
  require_unit(q);
  // Equals arccos of the clamped inner product, but stays accurate near
  // coincident and antipodal pairs.
  const double chord = (p.direction - q.direction).norm();
  const double cochord = (p.direction + q.direction).norm();
  return 2.0 * std::atan2(chord, cochord);
}

double distance(const ModelPoint& p, const ModelPoint& q, const Curvature& c) {
  return angular_distance(p, q) / c.sqrt_kappa();
}

ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double t,
                          const Curvature& c) {
  if (!(t >= 0.0 && t <= 1.0)) throw ContractError("interpolation parameter outside [0,1]");
  const double a = angular_distance(p, q);
  if (a >= M_PI) throw DomainError("geodesic between antipodal points is not unique");
  (void)c;
  if (a < 1e-12) return p;
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  const double sa = std::sin(a);
  Eigen::VectorXd w =
      (std::sin((1.0 - t) * a) * p.direction + std::sin(t * a) * q.direction) / sa;
  w /= w.norm();
  return ModelPoint(std::move(w));
}

double spherical_angle_from_sides(double opposite, double adjacent1, double adjacent2) {
  const double a = opposite, b = adjacent1, c = adjacent2;
  // Half-angle form: sin^2(A/2) and cos^2(A/2) as products of nonnegative sines.
  // Stable where the plain law-of-cosines ratio cancels catastrophically.
  const double s = 0.5 * (a + b + c);
  const double num = std::sin(0.5 * (a - b + c)) * std::sin(0.5 * (a + b - c));
  const double den = std::sin(s) * std::sin(s - a);
  return 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)), std::sqrt(std::max(den, 0.0)));
}

double vertex_angle(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                    const Curvature& c) {
  (void)c; // angles are invariant under the distance rescaling
  const double axy = angular_distance(x, y);
  const double axz = angular_distance(x, z);
  const double ayz = angular_distance(y, z);
  if (axy <= 0.0 || axz <= 0.0)
    throw DegenerateTriangleError("vertex angle needs x distinct from y and z");
  if (axy >= M_PI || axz >= M_PI || ayz >= M_PI)
    throw DomainError("vertex angle requires pairwise distances below D_kappa");
  if (ayz == 0.0) return 0.0;
  return spherical_angle_from_sides(ayz, axy, axz);
}

ComparisonTriangle comparison_triangle(double dxy, double dyz, double dzx,
                                       const Curvature& c) {
  const double sk = c.sqrt_kappa();
  const double a1 = dxy * sk; // x-y
  const double a2 = dzx * sk; // x-z
  const double a3 = dyz * sk; // y-z
  if (dxy < 0.0 || dyz < 0.0 || dzx < 0.0)
    throw InfeasibleTriangleError("negative side length");
  if (a1 >= M_PI || a2 >= M_PI || a3 >= M_PI)
    throw InfeasibleTriangleError("side length not below D_kappa");
  if (a1 + a2 + a3 >= 2.0 * M_PI)
    throw InfeasibleTriangleError("perimeter not below 2*D_kappa");
  const double slack = 1e-12;
  if (a1 > a2 + a3 + slack || a2 > a1 + a3 + slack || a3 > a1 + a2 + slack)
    throw InfeasibleTriangleError("triangle inequality violated");

  const Curvature plane(c.kappa, 2);
  Eigen::Vector3d xb(0.0, 0.0, 1.0);
  Eigen::Vector3d yb(std::sin(a1), 0.0, std::cos(a1));
  double angle_at_x = 0.0;
  if (a1 > 0.0 && a2 > 0.0) angle_at_x = spherical_angle_from_sides(a3, a1, a2);
  Eigen::Vector3d zb(std::sin(a2) * std::cos(angle_at_x),
                     std::sin(a2) * std::sin(angle_at_x), std::cos(a2));
  return ComparisonTriangle{ModelPoint(xb), ModelPoint(yb), ModelPoint(zb), plane};
}

double cat_inequality_residual(const ModelPoint& x, const ModelPoint& y,
                               const ModelPoint& z, double s, double t,
                               const Curvature& c) {
  const double dxy = distance(x, y, c);
  const double dyz = distance(y, z, c);
  const double dzx = distance(z, x, c);
  const ComparisonTriangle tri = comparison_triangle(dxy, dyz, dzx, c);

  const ModelPoint p = geodesic_point(x, y, s, c);
  const ModelPoint q = geodesic_point(x, z, t, c);
  const ModelPoint pbar = geodesic_point(tri.xbar, tri.ybar, s, tri.curv);
  const ModelPoint qbar = geodesic_point(tri.xbar, tri.zbar, t, tri.curv);

  return distance(pbar, qbar, tri.curv) - distance(p, q, c);
}

} // namespace catk
