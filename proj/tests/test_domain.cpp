#include <doctest.h>

#include "catk/domain.hpp"

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

TEST_CASE("ball construction and containment") {
  const ConvexBall ball = make_test_ball();
  CHECK(ball.diameter_bound() == 0.1);
  CHECK(ball.contains(ball.center));
  CHECK(ball.contains(offset(ball, 0.05, 0.3)));       // boundary, closed ball
  CHECK_FALSE(ball.contains(offset(ball, 0.06, 0.3))); // outside

  CHECK_THROWS_AS(make_test_ball(1.0, M_PI / 4.0), ContractError);
  CHECK_THROWS_AS(make_test_ball(1.0, -0.1), ContractError);
}

TEST_CASE("rotation map") {
  const ConvexBall ball = make_test_ball();
  const NonexpansiveMap id = NonexpansiveMap::rotation(ball, 0.0);
  const ModelPoint p = offset(ball, 0.03, 1.0);
  CHECK((id.apply(p).direction - p.direction).norm() < 1e-14);

  const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
  CHECK((rot.apply(ball.center).direction - ball.center.direction).norm() < 1e-14);
  CHECK((rot.fixed_point().direction - ball.center.direction).norm() == 0.0);

  // rigid rotation: distances preserved
  const ModelPoint q = offset(ball, 0.04, 2.2);
  CHECK(distance(rot.apply(p), rot.apply(q), ball.curv) ==
        doctest::Approx(distance(p, q, ball.curv)).epsilon(1e-12));

  CHECK_THROWS_AS(rot.apply(offset(ball, 0.07, 0.0)), DomainError);

  Eigen::VectorXd pole4(4);
  pole4 << 0, 0, 0, 1;
  const ConvexBall b4(ModelPoint(pole4), 0.05, Curvature(1.0, 3));
  CHECK_THROWS_AS(NonexpansiveMap::rotation(b4, 0.3), ContractError);
}

TEST_CASE("geodesic pull map") {
  const ConvexBall ball = make_test_ball();
  const ModelPoint anchor = offset(ball, 0.02, 0.0);
  const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, anchor, 0.5);

  CHECK((pull.apply(anchor).direction - anchor.direction).norm() < 1e-14);
  CHECK((pull.fixed_point().direction - anchor.direction).norm() == 0.0);

  const ModelPoint p = offset(ball, 0.04, 2.0);
  const ModelPoint tp = pull.apply(p);
  CHECK(distance(tp, anchor, ball.curv) ==
        doctest::Approx(0.5 * distance(p, anchor, ball.curv)).epsilon(1e-10));

  CHECK_THROWS_AS(NonexpansiveMap::geodesic_pull(ball, anchor, 1.0), ContractError);
  CHECK_THROWS_AS(NonexpansiveMap::geodesic_pull(ball, offset(ball, 0.08, 0.0), 0.5),
                  ContractError);
}

TEST_CASE("composition") {
  const ConvexBall ball = make_test_ball();
  const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
  const NonexpansiveMap pull_c = NonexpansiveMap::geodesic_pull(ball, ball.center, 0.5);
  const NonexpansiveMap comp = NonexpansiveMap::composition(ball, {rot, pull_c});

  // left-to-right application
  const ModelPoint p = offset(ball, 0.04, 0.7);
  const ModelPoint expect = pull_c.apply(rot.apply(p));
  CHECK((comp.apply(p).direction - expect.direction).norm() < 1e-14);

  // both factors fix the center
  CHECK((comp.fixed_point().direction - ball.center.direction).norm() == 0.0);

  const NonexpansiveMap pull_off =
      NonexpansiveMap::geodesic_pull(ball, offset(ball, 0.02, 0.0), 0.5);
  const NonexpansiveMap comp2 = NonexpansiveMap::composition(ball, {rot, pull_off});
  CHECK_THROWS_AS(comp2.fixed_point(), UnsupportedAnalysisError);
}

TEST_CASE("nonexpansiveness verification") {
  const ConvexBall ball = make_test_ball();
  const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 0.3);
  const auto rrot = verify_nonexpansive(rot, ball, 2000, 1e-9, 7);
  CHECK(rrot.violations == 0);
  CHECK(rrot.max_expansion_ratio <= 1.0 + 1e-12);
  CHECK(rrot.max_expansion_ratio > 0.999); // isometry, so ratios sit at 1

  const ModelPoint anchor = offset(ball, 0.02, 0.0);
  const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, anchor, 0.5);
  const auto rpull = verify_nonexpansive(pull, ball, 2000, 1e-9, 7);
  const double mrk = ball.m_sqrt_kappa();
  const double factor = std::sin(0.5 * mrk) / std::sin(mrk);
  CHECK(rpull.violations == 0);
  CHECK(rpull.max_expansion_ratio <= factor + 1e-9);

  const NonexpansiveMap comp = NonexpansiveMap::composition(ball, {rot, pull});
  CHECK(verify_nonexpansive(comp, ball, 2000, 1e-9, 7).violations == 0);

  // deterministic in (seed, samples)
  const auto again = verify_nonexpansive(pull, ball, 2000, 1e-9, 7);
  CHECK(again.max_expansion_ratio == rpull.max_expansion_ratio);
  CHECK(again.pairs_used == rpull.pairs_used);
}

TEST_CASE("ball invariance of the catalog") {
  for (double kappa : {0.5, 1.0, 4.0}) {
    const ConvexBall ball = make_test_ball(kappa, 0.3 / std::sqrt(kappa));
    Rng rng(99);
    const NonexpansiveMap rot = NonexpansiveMap::rotation(ball, 1.1);
    const NonexpansiveMap pull =
        NonexpansiveMap::geodesic_pull(ball, sample_in_ball(ball, rng), 0.3);
    for (int k = 0; k < 300; ++k) {
      const ModelPoint p = sample_in_ball(ball, rng);
      CHECK(distance(ball.center, rot.apply(p), ball.curv) <= ball.radius + 1e-10);
      CHECK(distance(ball.center, pull.apply(p), ball.curv) <= ball.radius + 1e-10);
    }
  }
}

TEST_CASE("pull map satisfies the geodesic contraction factor") {
  const ConvexBall ball = make_test_ball(1.0, 0.4); // M sqrt(kappa) = 0.8
  Rng rng(3);
  const ModelPoint anchor = sample_in_ball(ball, rng);
  for (double rho : {0.25, 0.5, 0.75}) {
    const NonexpansiveMap pull = NonexpansiveMap::geodesic_pull(ball, anchor, rho);
    const double mrk = ball.m_sqrt_kappa();
    const double factor = std::sin((1.0 - rho) * mrk) / std::sin(mrk);
    for (int k = 0; k < 300; ++k) {
      const ModelPoint x = sample_in_ball(ball, rng);
      const ModelPoint y = sample_in_ball(ball, rng);
      const double d = distance(x, y, ball.curv);
      if (d < 1e-8) continue;
      CHECK(distance(pull.apply(x), pull.apply(y), ball.curv) <= factor * d + 1e-10);
    }
  }
}
