#include <doctest.h>

#include "catk/browder.hpp"
#include "catk/rng.hpp"

using namespace catk;

namespace {

ConvexBall make_test_ball(double kappa = 1.0, double radius = 0.05) {
  Eigen::VectorXd pole(3);
  pole << 0, 0, 1;
  return ConvexBall(ModelPoint(pole), radius, Curvature(kappa, 2));
}

ModelPoint offset(const ConvexBall& ball, double geodesic_radius, double phase) {
  Eigen::VectorXd t(3);
  t << std::cos(phase), std::sin(phase), 0.0;
  const double a = geodesic_radius * ball.curv.sqrt_kappa();
  Eigen::VectorXd dir = std::cos(a) * ball.center.direction + std::sin(a) * t;
  return ModelPoint(dir / dir.norm());
}

} // namespace

TEST_CASE("contraction application") {
  const ConvexBall ball = make_test_ball();
  const ModelPoint u = offset(ball, 0.04, 0.0);
  const ModelPoint a = offset(ball, 0.03, M_PI / 2);
  const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, a, 0.5);

  SUBCASE("at a fixed point of T the image sits on [u, y]") {
    // T(a) = a, so T_t^u(a) = t u + (1-t) a at parameter 1-t from u.
    const double t = 0.3;
    const ModelPoint r = contraction_apply(u, t, pull, a);
    CHECK(distance(u, r, ball.curv) ==
          doctest::Approx((1 - t) * distance(u, a, ball.curv)).epsilon(1e-10));
  }

  SUBCASE("t near 1 lands near u") {
    const double t = 0.999;
    const ModelPoint y = offset(ball, 0.045, 2.0);
    const ModelPoint r = contraction_apply(u, t, pull, y);
    CHECK(distance(r, u, ball.curv) <= (1 - t) * ball.diameter_bound() + 1e-12);
  }

  SUBCASE("contraction factor q_t across y") {
    const double t = 0.5;
    const double mrk = ball.m_sqrt_kappa();
    const double q = std::sin((1 - t) * mrk) / std::sin(mrk);
    Rng rng(5);
    for (int k = 0; k < 300; ++k) {
      const ModelPoint y1 = sample_in_ball(ball, rng);
      const ModelPoint y2 = sample_in_ball(ball, rng);
      const double d = distance(y1, y2, ball.curv);
      if (d < 1e-8) continue;
      const double dt = distance(contraction_apply(u, t, pull, y1),
                                 contraction_apply(u, t, pull, y2), ball.curv);
      CHECK(dt / d <= q + 1e-9);
    }
  }
}

TEST_CASE("fixed point solving") {
  const ConvexBall ball = make_test_ball();
  const ModelPoint u = offset(ball, 0.04, 0.0);
  const double tol = 1e-10 * ball.diameter_bound();

  SUBCASE("anchor at u solves to u for every t") {
    const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, u, 0.5);
    for (double t : {0.9, 0.5, 0.1, 0.01}) {
      const BrowderPoint z = solve_fixed_point(u, t, pull, tol);
      CHECK(distance(z.z, u, ball.curv) <= tol);
    }
  }

  SUBCASE("rotation at t = 1/2 satisfies the defining equation") {
    const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
    const BrowderPoint z = solve_fixed_point(u, 0.5, rot, tol);
    CHECK(z.residual <= tol);
    CHECK(distance(z.z, contraction_apply(u, 0.5, rot, z.z), ball.curv) <= 2 * tol);
  }

  SUBCASE("q_t value at M sqrt(kappa) = 0.1") {
    const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
    const BrowderPoint z = solve_fixed_point(u, 0.5, rot, tol);
    CHECK(z.q_t == doctest::Approx(std::sin(0.05) / std::sin(0.1)).epsilon(1e-14));
    CHECK(z.q_t == doctest::Approx(0.50063).epsilon(1e-4));
  }

  SUBCASE("bad parameters") {
    const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
    CHECK_THROWS_AS(solve_fixed_point(u, 1.0, rot, tol), ContractError);
    CHECK_THROWS_AS(solve_fixed_point(u, 0.5, rot, 0.0), ContractError);
    CHECK_THROWS_AS(solve_fixed_point(u, 1e-9, rot, 1e-16, 10), NonconvergenceError);
  }
}

TEST_CASE("resolvent family") {
  const ConvexBall ball = make_test_ball();
  const ModelPoint u = offset(ball, 0.04, 0.0);
  const ModelPoint a = offset(ball, 0.03, M_PI / 2);
  const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, a, 0.5);
  const double tol = 1e-10 * ball.diameter_bound();
  const auto family = resolvent_family(u, pull, 24, tol);

  REQUIRE(family.size() == 25);
  CHECK(family[0].t == 1.0);
  CHECK((family[0].z.direction - u.direction).norm() == 0.0);
  CHECK(family[0].residual == 0.0);

  SUBCASE("defining-equation residuals certified") {
    for (std::size_t i = 1; i < family.size(); ++i) {
      CHECK(family[i].residual <= tol);
      CHECK(distance(family[i].z,
                     contraction_apply(u, family[i].t, pull, family[i].z),
                     ball.curv) <= 2 * tol);
    }
  }

  SUBCASE("d(u, z_i) nondecreasing") {
    for (std::size_t i = 0; i + 1 < family.size(); ++i)
      CHECK(distance(u, family[i].z, ball.curv) <=
            distance(u, family[i + 1].z, ball.curv) + 2 * tol);
  }

  SUBCASE("pull family collapses toward the anchor") {
    CHECK(distance(family[24].z, a, ball.curv) <
          0.2 * distance(family[1].z, a, ball.curv));
  }
}

TEST_CASE("empirical Browder metastability") {
  const ConvexBall ball = make_test_ball();
  const ModelPoint u = offset(ball, 0.04, 0.0);
  const ModelPoint a = offset(ball, 0.03, M_PI / 2);
  const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, a, 0.5);
  const double tol = 1e-10 * ball.diameter_bound();
  const auto family = resolvent_family(u, pull, 16, tol);

  SUBCASE("single-point window always passes") {
    CHECK(empirical_browder_metastability(family, 0.5, GFunction::constant(0),
                                          ball.curv, tol) == 0);
  }

  SUBCASE("wide epsilon accepts the first window") {
    CHECK(empirical_browder_metastability(family, 0.9, GFunction::constant(3),
                                          ball.curv, tol) == 0);
  }

  SUBCASE("family exhaustion raises") {
    CHECK_THROWS_AS(empirical_browder_metastability(family, 1e-9,
                                                    GFunction::affine(2, 5),
                                                    ball.curv, tol),
                    ExhaustedError);
  }

  SUBCASE("eps outside (0,1) rejected") {
    CHECK_THROWS_AS(empirical_browder_metastability(family, 1.0,
                                                    GFunction::constant(0),
                                                    ball.curv, tol),
                    ContractError);
  }
}
