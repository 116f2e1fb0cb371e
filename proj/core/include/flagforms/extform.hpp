#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace flagforms {

using Complex = std::complex<double>;

// Element of the exterior algebra on dg_1..dg_N and their conjugates, with
// complex coefficients. A basis monomial is stored as a bit mask: bit i
// (i < N) is dg_i, bit N + i is its conjugate. The canonical order of a
// monomial is ascending bit index, so all holomorphic factors come first.
class ExtForm {
 public:
  using Mask = std::uint64_t;
  static constexpr int kMaxGenerators = 32;

  explicit ExtForm(int generators = 0);

  static ExtForm scalar(int generators, Complex c);
  static ExtForm holomorphic(int generators, int i);      // dg_i
  static ExtForm antiholomorphic(int generators, int i);  // conj(dg_i)
  // c * dg_i ^ conj(dg_j)
  static ExtForm one_one(int generators, int i, int j, Complex c = 1.0);
  // Monomial given by holomorphic and anti-holomorphic index masks, in
  // canonical order.
  static ExtForm monomial(int generators, Mask holo, Mask anti, Complex c = 1.0);

  int generators() const { return n_; }
  const std::map<Mask, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Mask holo_mask(Mask key) const { return key & low_mask(); }
  Mask anti_mask(Mask key) const { return key >> n_; }
  Mask key(Mask holo, Mask anti) const { return holo | (anti << n_); }
  Complex coefficient(Mask holo, Mask anti) const;

  // Adds c times the canonical monomial `key`.
  void add(Mask key, Complex c);

  ExtForm& operator+=(const ExtForm& o);
  ExtForm& operator-=(const ExtForm& o);
  ExtForm& operator*=(Complex s);
  friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
  friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
  friend ExtForm operator*(ExtForm a, Complex s) { return a *= s; }
  friend ExtForm operator*(Complex s, ExtForm a) { return a *= s; }
  // The product in the exterior algebra.
  friend ExtForm operator*(const ExtForm& a, const ExtForm& b) { return wedge(a, b); }
  friend ExtForm wedge(const ExtForm& a, const ExtForm& b);

  ExtForm conjugate() const;

  // Component of bidegree (p,q).
  ExtForm component(int p, int q) const;
  // True when every term has bidegree (p,q).
  bool has_bidegree(int p, int q) const;

  // Largest coefficient modulus (0 for the zero form).
  double max_abs() const;
  // Drops coefficients with modulus <= tol.
  ExtForm pruned(double tol) const;

  // Embeds into a larger generator space, generator i -> i + offset.
  ExtForm embedded(int generators, int offset = 0) const;

 private:
  Mask low_mask() const { return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1); }

  int n_;
  std::map<Mask, Complex> terms_;
};

// Sign of concatenating canonical monomials a then b (0 if they overlap).
int concatenation_sign(ExtForm::Mask a, ExtForm::Mask b);

// Supremum-norm distance between two forms.
double distance(const ExtForm& a, const ExtForm& b);

// Square matrix of forms. entry(alpha, beta) is the coefficient of
// e_alpha^dual (x) e_beta, i.e. D e_alpha = sum_beta entry(alpha,beta) e_beta.
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(int size, int generators);

  int size() const { return size_; }
  int generators() const { return generators_; }
  ExtForm& operator()(int a, int b) { return entries_[static_cast<std::size_t>(a * size_ + b)]; }
  const ExtForm& operator()(int a, int b) const {
    return entries_[static_cast<std::size_t>(a * size_ + b)];
  }

  FormMatrix& operator+=(const FormMatrix& o);
  FormMatrix& operator-=(const FormMatrix& o);
  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator-(FormMatrix a, const FormMatrix& b) { return a -= b; }

  // Largest deviation from conj(M(a,b)) = -M(b,a), the symmetry of a
  // curvature matrix in a unitary frame.
  double hermitian_defect() const;
  double max_abs() const;

 private:
  int size_ = 0;
  int generators_ = 0;
  std::vector<ExtForm> entries_;
};

double distance(const FormMatrix& a, const FormMatrix& b);

}  // namespace flagforms
