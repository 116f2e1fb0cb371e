#include "flagforms/conegeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flagforms {

SchurConeCheck in_schur_cone(const SchurVector& v) {
  SchurConeCheck out;
  for (const auto& [sigma, c] : v.coords) {
    if (c < 0) {
      out.inside = false;
      out.negative.push_back(sigma);
    }
  }
  return out;
}

namespace {

Rational eval(const Polynomial& p, const std::vector<Rational>& params) {
  Rational acc = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= params[i];
    }
    acc += term;
  }
  return acc;
}

RayFamily2D make_family(std::string name, int n, auto&& build) {
  RayFamily2D f;
  f.name = std::move(name);
  f.num_params = n;
  const auto sz = static_cast<std::size_t>(n);
  const Polynomial a = Polynomial::variable(sz, 0);
  const Polynomial b = n > 1 ? Polynomial::variable(sz, 1) : Polynomial(sz);
  const Polynomial c = n > 2 ? Polynomial::variable(sz, 2) : Polynomial(sz);
  build(f, a, b, c);
  return f;
}

bool is_zero(const Vec2& v) { return v.x == 0 && v.y == 0; }

bool upper(const Vec2& v) { return v.y > 0 || (v.y == 0 && v.x > 0); }

double norm(const Vec2& v) { return std::hypot(to_double(v.x), to_double(v.y)); }

// Distance from the unit vector along t to the closed ray through b.
double distance_to_ray(const Vec2& t, const Vec2& b) {
  const double nt = norm(t);
  const double nb = norm(b);
  if (dot(t, b) <= 0) return 1.0;
  return std::abs(to_double(cross(b, t))) / (nt * nb);
}

}  // namespace

Vec2 RayFamily2D::at(const std::vector<Rational>& params) const {
  if (static_cast<int>(params.size()) != num_params) {
    throw std::invalid_argument("wrong number of family parameters");
  }
  return {eval(x, params), eval(y, params)};
}

const std::vector<RayFamily2D>& builtin_families() {
  static const std::vector<RayFamily2D> families = [] {
    std::vector<RayFamily2D> v;
    v.push_back(make_family("fcone-r3-proj", 2, [](RayFamily2D& f, auto& a, auto& b, auto&) {
      f.x = Rational(2) * a * (a.pow(3) - Rational(3) * a * b.pow(2) + Rational(2) * b.pow(3));
      f.y = Rational(3) * a.pow(4) - Rational(4) * a.pow(3) * b + b.pow(4);
    }));
    v.push_back(make_family("fcone-r3-hyper", 2, [](RayFamily2D& f, auto& a, auto& b, auto&) {
      f.x = Rational(2) * b * (Rational(2) * a.pow(3) - Rational(3) * a.pow(2) * b + b.pow(3));
      f.y = a.pow(4) - Rational(4) * a * b.pow(3) + Rational(3) * b.pow(4);
    }));
    v.push_back(make_family("fcone-r3-complete", 3, [](RayFamily2D& f, auto& a, auto& b, auto& c) {
      f.x = Rational(10) * (a.pow(2) * b.pow(2) * (a - b) - a.pow(2) * c.pow(2) * (a - c) +
                            b.pow(2) * c.pow(2) * (b - c));
      f.y = Rational(5) * (a * b * (a.pow(3) - b.pow(3)) - a * c * (a.pow(3) - c.pow(3)) +
                           b * c * (b.pow(3) - c.pow(3)));
    }));
    v.push_back(make_family("fcone-r2", 2, [](RayFamily2D& f, auto& a, auto& b, auto&) {
      f.x = Rational(3) * a * b * (a - b);
      f.y = a.pow(3) - b.pow(3);
    }));
    return v;
  }();
  return families;
}

const RayFamily2D& builtin_family(const std::string& name) {
  for (const auto& f : builtin_families()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown cone family '" + name + "'");
}

std::vector<Vec2> sample_rays(const RayFamily2D& fam, int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  std::vector<Vec2> out;
  const Rational one(1);
  if (fam.num_params == 1) {
    out.push_back(fam.at({one}));
  } else if (fam.num_params == 2) {
    for (int j = 0; j < grid; ++j) out.push_back(fam.at({one, Rational(j, grid)}));
  } else if (fam.num_params == 3) {
    for (int j = 1; j < grid; ++j) {
      for (int i = 0; i < j; ++i) {
        Rational b(j, grid), c(i, grid);
        b.canonicalize();
        c.canonicalize();
        out.push_back(fam.at({one, b, c}));
      }
    }
  } else {
    throw std::invalid_argument("families take one to three parameters");
  }
  for (auto& v : out) {
    v.x.canonicalize();
    v.y.canonicalize();
  }
  return out;
}

Rational cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
Rational dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }

bool same_direction(const Vec2& u, const Vec2& v) { return cross(u, v) == 0 && dot(u, v) > 0; }

bool angle_less(const Vec2& u, const Vec2& v) {
  const bool hu = upper(u);
  const bool hv = upper(v);
  if (hu != hv) return hu;
  return cross(u, v) > 0;
}

AngleHull hull_of_rays(const std::vector<Vec2>& rays) {
  std::vector<Vec2> dirs;
  for (const Vec2& v : rays) {
    if (!is_zero(v)) dirs.push_back(v);
  }
  if (dirs.empty()) throw std::invalid_argument("all sampled rays are zero");
  AngleHull hull;
  hull.rays = dirs.size();
  std::sort(dirs.begin(), dirs.end(), angle_less);
  std::vector<Vec2> uniq;
  for (const Vec2& v : dirs) {
    if (uniq.empty() || !same_direction(uniq.back(), v)) uniq.push_back(v);
  }
  if (uniq.size() > 1 && same_direction(uniq.front(), uniq.back())) uniq.pop_back();
  if (uniq.size() == 1) {
    hull.lo = hull.hi = uniq.front();
    return hull;
  }
  // A gap of at least pi between consecutive directions leaves a pointed
  // cone; at most one gap can exceed pi.
  const std::size_t n = uniq.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& u = uniq[k];
    const Vec2& v = uniq[(k + 1) % n];
    const Rational cr = cross(u, v);
    if (cr < 0 || (cr == 0 && dot(u, v) < 0)) {
      hull.lo = v;
      hull.hi = u;
      return hull;
    }
  }
  hull.full = true;
  return hull;
}

AngleHull ray_hull_2d(const RayFamily2D& fam, int grid) { return hull_of_rays(sample_rays(fam, grid)); }

AngleHull ray_hull_2d(const std::vector<RayFamily2D>& fams, int grid) {
  std::vector<Vec2> all;
  for (const auto& f : fams) {
    auto rays = sample_rays(f, grid);
    all.insert(all.end(), rays.begin(), rays.end());
  }
  return hull_of_rays(all);
}

ConeMembership cone_membership_2d(const Vec2& target, const AngleHull& hull) {
  if (is_zero(target)) throw std::invalid_argument("target vector is zero");
  ConeMembership m;
  if (hull.full) {
    m.inside = true;
    m.margin = std::numeric_limits<double>::infinity();
    return m;
  }
  m.inside = same_direction(hull.lo, target) || same_direction(hull.hi, target) ||
             (cross(hull.lo, target) > 0 && cross(target, hull.hi) > 0);
  m.margin = std::min(distance_to_ray(target, hull.lo), distance_to_ray(target, hull.hi));
  return m;
}

}  // namespace flagforms
