#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "flagforms/conegeom.hpp"

using namespace flagforms;

namespace {

Vec2 v(long x, long y) { return Vec2{Rational(x), Rational(y)}; }

}  // namespace

TEST_CASE("exact ray predicates") {
  CHECK(cross(v(1, 0), v(0, 1)) == 1);
  CHECK(dot(v(1, 2), v(3, -1)) == 1);
  CHECK(same_direction(v(2, 4), v(1, 2)));
  CHECK_FALSE(same_direction(v(-1, -2), v(1, 2)));
  CHECK(angle_less(v(1, 0), v(0, 1)));
  CHECK(angle_less(v(0, 1), v(-1, -1)));
  CHECK_FALSE(angle_less(v(0, -1), v(1, 1)));
}

TEST_CASE("hull and membership in the plane") {
  const AngleHull quadrant = hull_of_rays({v(1, 0), v(0, 1), v(1, 1)});
  CHECK_FALSE(quadrant.full);
  CHECK(same_direction(quadrant.lo, v(1, 0)));
  CHECK(same_direction(quadrant.hi, v(0, 1)));
  CHECK(cone_membership_2d(v(2, 3), quadrant).inside);
  CHECK(cone_membership_2d(v(1, 0), quadrant).inside);
  CHECK(cone_membership_2d(v(1, 0), quadrant).margin == doctest::Approx(0.0));
  const ConeMembership out = cone_membership_2d(v(1, -1), quadrant);
  CHECK_FALSE(out.inside);
  CHECK(out.margin == doctest::Approx(std::sqrt(0.5)));
  CHECK(cone_membership_2d(v(-1, -1), quadrant).margin == doctest::Approx(1.0));
  CHECK_THROWS_AS(cone_membership_2d(v(0, 0), quadrant), std::invalid_argument);

  const AngleHull full = hull_of_rays({v(1, 0), v(-1, 1), v(-1, -1)});
  CHECK(full.full);
  CHECK(std::isinf(cone_membership_2d(v(3, 7), full).margin));
  // Opposite rays span a half-plane boundary line; the closed hull is an arc of
  // opening pi.
  const AngleHull line = hull_of_rays({v(1, 0), v(-1, 0), v(0, 1)});
  CHECK_FALSE(line.full);
  CHECK(cone_membership_2d(v(0, 1), line).inside);
  CHECK_FALSE(cone_membership_2d(v(0, -1), line).inside);
}

TEST_CASE("Schur cone membership") {
  SchurVector sv{3, 4, {{{3}, 2}, {{2, 1}, 0}, {{1, 1, 1}, Rational(-1, 2)}}};
  const SchurConeCheck c = in_schur_cone(sv);
  CHECK_FALSE(c.inside);
  REQUIRE(c.negative.size() == 1);
  CHECK(c.negative.front() == Partition{1, 1, 1});
  sv.coords.back().second = 1;
  CHECK(in_schur_cone(sv).inside);
}

TEST_CASE("built-in families") {
  CHECK(builtin_families().size() == 4);
  CHECK_THROWS(builtin_family("nope"));
  const RayFamily2D& proj = builtin_family("fcone-r3-proj");
  // Projective family at b = 0 is (2, 3) times a^4.
  const Vec2 p = proj.at({Rational(1), Rational(0)});
  CHECK(p.x == 2);
  CHECK(p.y == 3);
  CHECK_THROWS(proj.at({Rational(1)}));
}

TEST_CASE("c2 lies outside the rank-3 families with a positive margin") {
  const std::vector<RayFamily2D> fams = {builtin_family("fcone-r3-proj"), builtin_family("fcone-r3-hyper"),
                                         builtin_family("fcone-r3-complete")};
  double previous = std::numeric_limits<double>::infinity();
  for (int grid : {2, 4, 8, 16, 32, 64}) {
    const AngleHull h = ray_hull_2d(fams, grid);
    const ConeMembership m = cone_membership_2d(v(1, 0), h);
    CHECK_FALSE(m.inside);
    CHECK(m.margin > 0.0);
    // Nested grids only enlarge the hull.
    CHECK(m.margin <= previous + 1e-15);
    previous = m.margin;
  }
}

TEST_CASE("rank-2 family leaves the S_(1,1) axis for b > 0") {
  const RayFamily2D& fam = builtin_family("fcone-r2");
  for (const Vec2& ray : sample_rays(fam, 64)) {
    if (ray.x == 0) CHECK(ray.y != 0);
  }
  const Vec2 at_zero = fam.at({Rational(1), Rational(0)});
  CHECK(at_zero.x == 0);
  for (int j = 1; j < 64; ++j) CHECK(fam.at({Rational(1), Rational(j) / 64}).x > 0);
}
