#include <doctest.h>

#include <random>
#include <stdexcept>

#include "flagforms/extform.hpp"

using namespace flagforms;

namespace {

ExtForm random_form(std::mt19937& rng, int g, int terms) {
  std::uniform_int_distribution<int> idx(0, g - 1), kind(0, 1);
  std::normal_distribution<double> n;
  ExtForm f(g);
  for (int t = 0; t < terms; ++t) {
    ExtForm one = ExtForm::scalar(g, Complex(n(rng), n(rng)));
    const int len = idx(rng) % 3;
    for (int i = 0; i < len; ++i) {
      one = one * (kind(rng) ? ExtForm::holomorphic(g, idx(rng)) : ExtForm::antiholomorphic(g, idx(rng)));
    }
    f += one;
  }
  return f;
}

}  // namespace

TEST_CASE("one-forms anticommute and square to zero") {
  const int g = 3;
  const ExtForm a = ExtForm::holomorphic(g, 0);
  const ExtForm b = ExtForm::antiholomorphic(g, 2);
  CHECK((a * a).is_zero());
  CHECK(distance(a * b, (b * a) * Complex(-1.0)) == 0.0);
  CHECK(concatenation_sign(0b1, 0b10) == 1);
  CHECK(concatenation_sign(0b10, 0b1) == -1);
  CHECK(concatenation_sign(0b11, 0b10) == 0);
}

TEST_CASE("wedge product is associative and distributive") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const ExtForm a = random_form(rng, 3, 4), b = random_form(rng, 3, 4), c = random_form(rng, 3, 3);
    CHECK(distance((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(distance(a * (b + c), a * b + a * c) < 1e-12);
  }
}

TEST_CASE("conjugation") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const ExtForm a = random_form(rng, 3, 4), b = random_form(rng, 3, 4);
    CHECK(distance(a.conjugate().conjugate(), a) < 1e-14);
    CHECK(distance((a * b).conjugate(), a.conjugate() * b.conjugate()) < 1e-12);
  }
  // i dz ^ conj(dz) is real.
  const ExtForm k = ExtForm::one_one(2, 1, 1, Complex(0.0, 1.0));
  CHECK(distance(k.conjugate(), k) == 0.0);
}

TEST_CASE("bidegree and components") {
  const int g = 2;
  ExtForm f = ExtForm::one_one(g, 0, 1) + ExtForm::holomorphic(g, 0) + ExtForm::scalar(g, 2.0);
  CHECK(f.component(1, 1).has_bidegree(1, 1));
  CHECK(f.component(1, 0).terms().size() == 1);
  CHECK_FALSE(f.has_bidegree(1, 1));
  CHECK(f.coefficient(0b1, 0b10) == Complex(1.0));
  CHECK(f.pruned(1.5).terms().size() == 1);
  const ExtForm e = ExtForm::holomorphic(1, 0).embedded(3, 2);
  CHECK(e.coefficient(0b100, 0) == Complex(1.0));
  CHECK(ExtForm::monomial(g, 0b11, 0b01).coefficient(0b11, 0b01) == Complex(1.0));
}

TEST_CASE("form matrices") {
  FormMatrix m(2, 1);
  m(0, 1) = ExtForm::one_one(1, 0, 0, Complex(1.0, 2.0));
  m(1, 0) = ExtForm::one_one(1, 0, 0, Complex(1.0, -2.0));
  // conj(a dz^dzbar) = -conj(a) dz^dzbar, so this pair has the symmetry.
  CHECK(m.hermitian_defect() < 1e-15);
  m(1, 0) = ExtForm::one_one(1, 0, 0, Complex(-1.0, 2.0));
  CHECK(m.hermitian_defect() == doctest::Approx(2.0 * std::abs(Complex(1.0, 2.0))));
  CHECK(m.max_abs() == doctest::Approx(std::abs(Complex(1.0, 2.0))));
}
