#include "flagforms/formlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flagforms/determinant.hpp"
#include "flagforms/random.hpp"

namespace flagforms {

CurvatureTensor::CurvatureTensor(int n, int r)
    : n_(n), r_(r), c_(static_cast<std::size_t>(n * n * r * r), Complex(0.0)) {
  if (n < 0 || r < 1) throw std::invalid_argument("curvature tensor needs n >= 0 and r >= 1");
}

Eigen::MatrixXcd CurvatureTensor::slice(int j, int k) const {
  Eigen::MatrixXcd m(r_, r_);
  for (int a = 0; a < r_; ++a) {
    for (int b = 0; b < r_; ++b) m(a, b) = at(j, k, a, b);
  }
  return m;
}

double CurvatureTensor::hermitian_defect() const {
  double d = 0.0;
  for (int j = 0; j < n_; ++j) {
    for (int k = 0; k < n_; ++k) {
      for (int a = 0; a < r_; ++a) {
        for (int b = 0; b < r_; ++b) d = std::max(d, std::abs(std::conj(at(j, k, a, b)) - at(k, j, b, a)));
      }
    }
  }
  return d;
}

void CurvatureTensor::check_hermitian(double tol) const {
  const double d = hermitian_defect();
  if (d > tol * std::max(1.0, max_abs())) {
    throw std::invalid_argument("curvature tensor violates conj(c_jkab) = c_kjba (defect " +
                                std::to_string(d) + ")");
  }
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (const Complex& z : c_) m = std::max(m, std::abs(z));
  return m;
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& o) {
  if (o.n_ != n_ || o.r_ != r_) throw std::invalid_argument("curvature tensor shapes differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (Complex& z : c_) z *= s;
  return *this;
}

FormMatrix curvature_matrix(const CurvatureTensor& c, int generators) {
  if (generators < c.n()) throw std::invalid_argument("generator space smaller than the base dimension");
  FormMatrix m(c.r(), generators);
  for (int a = 0; a < c.r(); ++a) {
    for (int b = 0; b < c.r(); ++b) {
      ExtForm& e = m(a, b);
      for (int j = 0; j < c.n(); ++j) {
        for (int k = 0; k < c.n(); ++k) {
          const Complex v = c.at(j, k, a, b);
          if (v != Complex(0.0)) e.add(e.key(ExtForm::Mask{1} << j, ExtForm::Mask{1} << k), v);
        }
      }
    }
  }
  return m;
}

FormMatrix curvature_matrix(const CurvatureTensor& c) { return curvature_matrix(c, c.n()); }

std::vector<ExtForm> chern_forms(const FormMatrix& m) {
  const int r = m.size();
  const int g = m.generators();
  const Complex factor(0.0, 1.0 / (2.0 * std::numbers::pi));
  std::vector<std::vector<ExtForm>> a(static_cast<std::size_t>(r),
                                      std::vector<ExtForm>(static_cast<std::size_t>(r), ExtForm(g)));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      ExtForm e = m(i, j) * factor;
      if (i == j) e += ExtForm::scalar(g, 1.0);
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(e);
    }
  }
  const ExtForm total = determinant(a, ExtForm(g), ExtForm::scalar(g, 1.0),
                                    [](const ExtForm& f) { return f.is_zero(); });
  std::vector<ExtForm> out;
  for (int s = 0; s <= r; ++s) out.push_back(total.component(s, s));
  return out;
}

namespace {

Eigen::VectorXcd gaussian_vector(CounterRng& rng, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

Eigen::VectorXcd unit_vector(CounterRng& rng, int n) {
  for (;;) {
    Eigen::VectorXcd v = gaussian_vector(rng, n);
    const double nv = v.norm();
    if (nv > 1e-12) return v / nv;
  }
}

ExtForm kahler_power(int n, int k) {
  ExtForm omega(n);
  for (int j = 0; j < n; ++j) omega += ExtForm::one_one(n, j, j, Complex(0.0, 1.0));
  ExtForm out = ExtForm::scalar(n, 1.0);
  for (int i = 0; i < k; ++i) out = wedge(out, omega);
  return out;
}

}  // namespace

CurvatureTensor griffiths_sample(int n, int r, int terms, std::uint64_t seed) {
  CurvatureTensor c(n, r);
  for (int q = 0; q < terms; ++q) {
    CounterRng rng(seed, {0x6772ULL, static_cast<std::uint64_t>(q)});
    const Eigen::VectorXcd u = gaussian_vector(rng, n);
    const Eigen::VectorXcd w = gaussian_vector(rng, r);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < r; ++a) {
          for (int b = 0; b < r; ++b) {
            c.at(j, k, a, b) += u(j) * std::conj(u(k)) * w(a) * std::conj(w(b));
          }
        }
      }
    }
  }
  return c;
}

CurvatureTensor random_hermitian_tensor(int n, int r, std::uint64_t seed) {
  CurvatureTensor c(n, r);
  CounterRng rng(seed, {0x6872ULL});
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) c.at(j, k, a, b) = rng.complex_normal();
      }
    }
  }
  CurvatureTensor sym(n, r);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) sym.at(j, k, a, b) = 0.5 * (c.at(j, k, a, b) + std::conj(c.at(k, j, b, a)));
      }
    }
  }
  return sym;
}

double griffiths_value(const CurvatureTensor& c, const Eigen::VectorXcd& tau, const Eigen::VectorXcd& v) {
  Complex acc = 0.0;
  for (int j = 0; j < c.n(); ++j) {
    for (int k = 0; k < c.n(); ++k) {
      const Complex tt = tau(j) * std::conj(tau(k));
      for (int a = 0; a < c.r(); ++a) {
        for (int b = 0; b < c.r(); ++b) acc += c.at(j, k, a, b) * tt * v(a) * std::conj(v(b));
      }
    }
  }
  return acc.real();
}

SampledMinimum griffiths_check(const CurvatureTensor& c, std::size_t samples, std::uint64_t seed) {
  SampledMinimum out;
  out.min = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    CounterRng rng(seed, {0x6763ULL, s});
    const double val = griffiths_value(c, unit_vector(rng, c.n()), unit_vector(rng, c.r()));
    out.min = std::min(out.min, val);
    out.max_abs = std::max(out.max_abs, std::abs(val));
  }
  out.samples = samples;
  if (samples == 0) out.min = 0.0;
  return out;
}

Complex evaluate_on_frame(const ExtForm& gamma, const Eigen::MatrixXcd& frame) {
  const int k = static_cast<int>(frame.cols());
  const int n = static_cast<int>(frame.rows());
  auto minor = [&](ExtForm::Mask rows) {
    Eigen::MatrixXcd sub(k, k);
    int i = 0;
    while (rows) {
      const int row = std::countr_zero(rows);
      rows &= rows - 1;
      if (row >= n) throw std::invalid_argument("form uses a generator outside the frame");
      sub.row(i++) = frame.row(row);
    }
    return k == 0 ? Complex(1.0) : sub.determinant();
  };
  Complex acc = 0.0;
  for (const auto& [key, c] : gamma.terms()) {
    const auto s = gamma.holo_mask(key);
    const auto t = gamma.anti_mask(key);
    if (std::popcount(s) != k || std::popcount(t) != k) {
      throw std::invalid_argument("form does not have bidegree (k,k)");
    }
    acc += c * minor(s) * std::conj(minor(t));
  }
  return acc;
}

Complex positivity_phase(int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (k == 0) return 1.0;
  const Complex v = evaluate_on_frame(kahler_power(k, k), Eigen::MatrixXcd::Identity(k, k));
  return std::conj(v) / std::abs(v);
}

SampledMinimum positivity_check(const ExtForm& gamma, int k, int n, std::size_t samples,
                                std::uint64_t seed) {
  if (!gamma.has_bidegree(k, k)) throw std::invalid_argument("form does not have bidegree (k,k)");
  if (k > n) throw std::invalid_argument("k exceeds the number of horizontal generators");
  for (const auto& [key, c] : gamma.terms()) {
    if ((gamma.holo_mask(key) | gamma.anti_mask(key)) >> n) {
      throw std::invalid_argument("form has non-horizontal generators");
    }
  }
  const Complex kappa = positivity_phase(k);
  SampledMinimum out;
  out.min = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    CounterRng rng(seed, {0x7073ULL, s});
    Eigen::MatrixXcd frame(n, k);
    for (int j = 0; j < k; ++j) frame.col(j) = gaussian_vector(rng, n);
    const double val = (kappa * evaluate_on_frame(gamma, frame)).real();
    out.min = std::min(out.min, val);
    out.max_abs = std::max(out.max_abs, std::abs(val));
  }
  out.samples = samples;
  if (samples == 0) out.min = 0.0;
  return out;
}

int griffiths_c1_sign(int n, int r, const std::vector<std::uint64_t>& seeds) {
  int sign = 0;
  for (std::uint64_t seed : seeds) {
    const CurvatureTensor c = griffiths_sample(n, r, 2, seed);
    const ExtForm c1 = chern_forms(curvature_matrix(c))[1];
    const SampledMinimum m = positivity_check(c1, 1, n, 256, seed);
    const double tol = 1e-12 * std::max(1.0, m.max_abs);
    int s = 0;
    if (m.min >= -tol) {
      s = 1;
    } else {
      const SampledMinimum neg = positivity_check(c1 * Complex(-1.0), 1, n, 256, seed);
      if (neg.min >= -tol) s = -1;
    }
    if (s == 0 || (sign != 0 && s != sign)) {
      throw std::logic_error("Griffiths sign calibration is not stable across seeds");
    }
    sign = s;
  }
  return sign;
}

}  // namespace flagforms
