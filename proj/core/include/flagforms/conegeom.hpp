#pragma once

#include <string>
#include <vector>

#include "flagforms/charpoly.hpp"
#include "flagforms/polynomial.hpp"

namespace flagforms {

struct SchurConeCheck {
  bool inside = true;
  std::vector<Partition> negative;  // witnesses: coordinates < 0
};

// Membership in the cone spanned by Schur classes: every coordinate >= 0.
SchurConeCheck in_schur_cone(const SchurVector& v);

struct Vec2 {
  Rational x;
  Rational y;
};

// Two coordinate polynomials in ordered parameters (a), (a,b) or (a,b,c)
// with domain a > b > c >= 0. Families are sampled on the slice a = 1.
struct RayFamily2D {
  std::string name;
  int num_params = 1;
  Polynomial x;
  Polynomial y;

  Vec2 at(const std::vector<Rational>& params) const;
};

// Named built-in families: "fcone-r3-proj", "fcone-r3-hyper",
// "fcone-r3-complete" (rank 3, coordinates in the basis S_(2), S_(1,1)) and
// "fcone-r2".
const std::vector<RayFamily2D>& builtin_families();
const RayFamily2D& builtin_family(const std::string& name);

// Closed angular hull of a set of rays. Either the whole plane, or an arc
// running counter-clockwise from `lo` to `hi` of opening at most pi.
struct AngleHull {
  bool full = false;
  Vec2 lo;
  Vec2 hi;
  std::size_t rays = 0;  // number of non-zero sampled rays
};

// Parameter grid: a = 1 and b, c range over multiples of 1/grid inside the
// domain. Grids nest when one denominator divides the other.
std::vector<Vec2> sample_rays(const RayFamily2D& fam, int grid);

AngleHull hull_of_rays(const std::vector<Vec2>& rays);
AngleHull ray_hull_2d(const RayFamily2D& fam, int grid);
AngleHull ray_hull_2d(const std::vector<RayFamily2D>& fams, int grid);

struct ConeMembership {
  bool inside = false;
  // Distance from the unit target direction to the nearest boundary ray of
  // the hull (zero on the boundary). Infinite for a full-plane hull.
  double margin = 0.0;
};

// Exact membership test; throws std::invalid_argument for a zero target.
ConeMembership cone_membership_2d(const Vec2& target, const AngleHull& hull);

// Exact predicates on rays.
Rational cross(const Vec2& u, const Vec2& v);
Rational dot(const Vec2& u, const Vec2& v);
bool same_direction(const Vec2& u, const Vec2& v);
// Strict counter-clockwise angular order on non-zero vectors, angles
// measured in [0, 2 pi).
bool angle_less(const Vec2& u, const Vec2& v);

}  // namespace flagforms
