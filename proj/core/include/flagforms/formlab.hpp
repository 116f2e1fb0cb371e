#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "flagforms/extform.hpp"

namespace flagforms {

// Coefficients c_{jk alpha beta} of a Chern curvature tensor at a point,
// 0-based indices, with the symmetry conj(c_{jk ab}) = c_{kj ba}.
class CurvatureTensor {
 public:
  static constexpr double kHermitianTolerance = 1e-10;

  CurvatureTensor() = default;
  CurvatureTensor(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  Complex& at(int j, int k, int a, int b) { return c_[index(j, k, a, b)]; }
  const Complex& at(int j, int k, int a, int b) const { return c_[index(j, k, a, b)]; }

  // r x r matrix C_{jk}[a][b] = c_{jkab}.
  Eigen::MatrixXcd slice(int j, int k) const;

  double hermitian_defect() const;
  // Throws std::invalid_argument if the symmetry fails beyond tolerance.
  void check_hermitian(double tol = kHermitianTolerance) const;
  double max_abs() const;

  CurvatureTensor& operator+=(const CurvatureTensor& o);
  CurvatureTensor& operator*=(double s);
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator*(CurvatureTensor a, double s) { return a *= s; }

 private:
  std::size_t index(int j, int k, int a, int b) const {
    return static_cast<std::size_t>(((j * n_ + k) * r_ + a) * r_ + b);
  }

  int n_ = 0;
  int r_ = 0;
  std::vector<Complex> c_;
};

// Matrix of (1,1)-forms entry(a,b) = sum_{jk} c_{jkab} dz_j ^ conj(dz_k)
// on a generator space of size `generators` (dz_j is generator j).
FormMatrix curvature_matrix(const CurvatureTensor& c, int generators);
FormMatrix curvature_matrix(const CurvatureTensor& c);

// c_0..c_size of a curvature matrix: graded pieces of det(I + (i/2pi) M).
std::vector<ExtForm> chern_forms(const FormMatrix& m);

// Sum over q of u^q_j conj(u^q_k) w^q_a conj(w^q_b) with Gaussian vectors.
CurvatureTensor griffiths_sample(int n, int r, int terms, std::uint64_t seed);

// Random tensor with the Hermitian symmetry and no positivity condition.
CurvatureTensor random_hermitian_tensor(int n, int r, std::uint64_t seed);

// sum c_{jkab} tau_j conj(tau_k) v_a conj(v_b).
double griffiths_value(const CurvatureTensor& c, const Eigen::VectorXcd& tau, const Eigen::VectorXcd& v);

struct SampledMinimum {
  double min = 0.0;
  double max_abs = 0.0;  // scale of the sampled values
  std::size_t samples = 0;
};

// Minimum of the Griffiths form over random unit (tau, v).
SampledMinimum griffiths_check(const CurvatureTensor& c, std::size_t samples, std::uint64_t seed);

// Phase kappa_k with |kappa_k| = 1 making (sum_j i dz_j ^ conj(dz_j))^k
// evaluate positively; computed from that form.
Complex positivity_phase(int k);

// Value of a (k,k)-form on (v_1..v_k, conj(v_1)..conj(v_k)) before the phase:
// sum over terms of coeff * det(V_S) * conj(det(V_T)). The form may only use
// the first `n` generators; frame has n rows and k columns.
Complex evaluate_on_frame(const ExtForm& gamma, const Eigen::MatrixXcd& frame);

// Minimum over random k-frames of Re(kappa_k * gamma(frame)). Throws
// std::invalid_argument for wrong bidegree or non-horizontal generators.
SampledMinimum positivity_check(const ExtForm& gamma, int k, int n, std::size_t samples,
                                std::uint64_t seed);

// Sign linking Griffiths positivity to positivity of c_1: +1 when c_1 of
// griffiths_sample tensors is positive for every listed seed, -1 when
// negative for all; throws if seeds disagree.
int griffiths_c1_sign(int n, int r, const std::vector<std::uint64_t>& seeds);

}  // namespace flagforms
