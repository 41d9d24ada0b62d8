#pragma once

#include <Eigen/Dense>

#include "catk/errors.hpp"

namespace catk {

inline constexpr double kUnitTol = 1e-12;

/// Model space parameters: the sphere S^dim with distances rescaled by 1/sqrt(kappa).
struct Curvature {
  double kappa = 1.0; ///< curvature, > 0
  int dim = 2;        ///< sphere dimension n >= 2; points live in R^(n+1)

  Curvature() = default;
  Curvature(double kappa_, int dim_ = 2) : kappa(kappa_), dim(dim_) {
    if (!(kappa > 0.0)) throw ContractError("curvature must be positive");
    if (dim < 2) throw ContractError("sphere dimension must be at least 2");
  }

  double sqrt_kappa() const { return std::sqrt(kappa); }
  /// D_kappa = pi / sqrt(kappa); never stored, always derived.
  double diameter() const { return M_PI / std::sqrt(kappa); }
  int ambient_dim() const { return dim + 1; }
};

/// A point of the model space, stored as a unit direction vector in R^(dim+1).
struct ModelPoint {
  Eigen::VectorXd direction;

  ModelPoint() = default;
  explicit ModelPoint(Eigen::VectorXd dir) : direction(std::move(dir)) {}

  int ambient_dim() const { return static_cast<int>(direction.size()); }
};

/// Validating constructor: rejects non-unit vectors beyond kUnitTol.
ModelPoint make_point(Eigen::VectorXd dir);

/// Normalizes first, then constructs; for building points from raw coordinates.
ModelPoint make_point_normalized(Eigen::VectorXd dir);

/// Geodesic distance (1/sqrt(kappa)) * arccos(<p|q>), evaluated in the
/// numerically stable atan2 form. Symmetric, in [0, D_kappa].
double distance(const ModelPoint& p, const ModelPoint& q, const Curvature& c);

/// Angle between p and q on the unit sphere (distance before curvature rescaling).
double angular_distance(const ModelPoint& p, const ModelPoint& q);

/// The convex-combination point (1-t)p + tq: at distance t*d(p,q) from p.
/// Requires d(p,q) < D_kappa so the geodesic is unique; returns p when p == q.
ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double t,
                          const Curvature& c);

/// Vertex angle at x between the geodesics [x,y] and [x,z], from the spherical
/// law of cosines applied to the rescaled distances. In [0, pi].
double vertex_angle(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                    const Curvature& c);

/// Comparison triangle in M^2_kappa, canonical placement: xbar at the pole
/// (0,0,1), ybar in the x-z coordinate plane with nonnegative first coordinate,
/// zbar with nonnegative second coordinate.
struct ComparisonTriangle {
  ModelPoint xbar, ybar, zbar;
  Curvature curv; ///< same kappa, dim = 2
};

ComparisonTriangle comparison_triangle(double dxy, double dyz, double dzx,
                                       const Curvature& c);

/// CAT(kappa) inequality residual d_{M^2_kappa}(pbar,qbar) - d(p,q), where
/// p = (1-s)x + sy on [x,y] and q = (1-t)x + tz on [x,z], and pbar,qbar are the
/// corresponding comparison points. Zero (up to rounding) on the model space itself.
double cat_inequality_residual(const ModelPoint& x, const ModelPoint& y,
                               const ModelPoint& z, double s, double t,
                               const Curvature& c);

/// Interior angle at vertex A of a spherical triangle with angular side lengths
/// (a = side opposite A, b, c adjacent). Stable half-angle form.
double spherical_angle_from_sides(double opposite, double adjacent1, double adjacent2);

} // namespace catk
