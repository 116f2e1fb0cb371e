#include "flagforms/extform.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace flagforms {

int concatenation_sign(ExtForm::Mask a, ExtForm::Mask b) {
  if (a & b) return 0;
  // Count pairs (x in a, y in b) with x > y.
  int swaps = 0;
  while (b) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    const ExtForm::Mask above = y == 63 ? 0 : (a >> (y + 1));
    swaps += std::popcount(above);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

ExtForm::ExtForm(int generators) : n_(generators) {
  if (generators < 0 || generators > kMaxGenerators) {
    throw std::invalid_argument("exterior algebra supports at most 32 generators");
  }
}

ExtForm ExtForm::scalar(int generators, Complex c) {
  ExtForm f(generators);
  f.add(0, c);
  return f;
}

ExtForm ExtForm::holomorphic(int generators, int i) {
  if (i < 0 || i >= generators) throw std::out_of_range("generator index out of range");
  ExtForm f(generators);
  f.add(Mask{1} << i, 1.0);
  return f;
}

ExtForm ExtForm::antiholomorphic(int generators, int i) {
  if (i < 0 || i >= generators) throw std::out_of_range("generator index out of range");
  ExtForm f(generators);
  f.add(Mask{1} << (i + generators), 1.0);
  return f;
}

ExtForm ExtForm::one_one(int generators, int i, int j, Complex c) {
  if (i < 0 || i >= generators || j < 0 || j >= generators) {
    throw std::out_of_range("generator index out of range");
  }
  ExtForm f(generators);
  f.add(f.key(Mask{1} << i, Mask{1} << j), c);
  return f;
}

ExtForm ExtForm::monomial(int generators, Mask holo, Mask anti, Complex c) {
  ExtForm f(generators);
  if ((holo | anti) & ~f.low_mask()) throw std::out_of_range("monomial uses unknown generators");
  f.add(f.key(holo, anti), c);
  return f;
}

Complex ExtForm::coefficient(Mask holo, Mask anti) const {
  auto it = terms_.find(key(holo, anti));
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void ExtForm::add(Mask k, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

ExtForm& ExtForm::operator+=(const ExtForm& o) {
  if (o.n_ != n_) throw std::invalid_argument("forms live on different generator spaces");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& o) {
  if (o.n_ != n_) throw std::invalid_argument("forms live on different generator spaces");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ExtForm& ExtForm::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

ExtForm wedge(const ExtForm& a, const ExtForm& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("forms live on different generator spaces");
  ExtForm out(a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      const int s = concatenation_sign(ka, kb);
      if (s != 0) out.add(ka | kb, static_cast<double>(s) * ca * cb);
    }
  }
  return out;
}

ExtForm ExtForm::conjugate() const {
  ExtForm out(n_);
  for (const auto& [k, c] : terms_) {
    const Mask s = holo_mask(k);
    const Mask t = anti_mask(k);
    // conj(dg_S ^ conj(dg_T)) = conj(dg_S) ^ dg_T = (-1)^{|S||T|} dg_T ^ conj(dg_S)
    const int sign = (std::popcount(s) * std::popcount(t)) % 2 == 0 ? 1 : -1;
    out.add(key(t, s), static_cast<double>(sign) * std::conj(c));
  }
  return out;
}

ExtForm ExtForm::component(int p, int q) const {
  ExtForm out(n_);
  for (const auto& [k, c] : terms_) {
    if (std::popcount(holo_mask(k)) == p && std::popcount(anti_mask(k)) == q) out.terms_.emplace(k, c);
  }
  return out;
}

bool ExtForm::has_bidegree(int p, int q) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
    return std::popcount(holo_mask(t.first)) == p && std::popcount(anti_mask(t.first)) == q;
  });
}

double ExtForm::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

ExtForm ExtForm::pruned(double tol) const {
  ExtForm out(n_);
  for (const auto& [k, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(k, c);
  }
  return out;
}

ExtForm ExtForm::embedded(int generators, int offset) const {
  if (offset < 0 || offset + n_ > generators) throw std::invalid_argument("embedding does not fit");
  ExtForm out(generators);
  for (const auto& [k, c] : terms_) {
    out.terms_.emplace(out.key(holo_mask(k) << offset, anti_mask(k) << offset), c);
  }
  return out;
}

double distance(const ExtForm& a, const ExtForm& b) { return (a - b).max_abs(); }

FormMatrix::FormMatrix(int size, int generators)
    : size_(size), generators_(generators),
      entries_(static_cast<std::size_t>(size * size), ExtForm(generators)) {}

FormMatrix& FormMatrix::operator+=(const FormMatrix& o) {
  if (o.size_ != size_) throw std::invalid_argument("form matrix sizes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

FormMatrix& FormMatrix::operator-=(const FormMatrix& o) {
  if (o.size_ != size_) throw std::invalid_argument("form matrix sizes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

double FormMatrix::hermitian_defect() const {
  double d = 0.0;
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      d = std::max(d, ((*this)(a, b).conjugate() + (*this)(b, a)).max_abs());
    }
  }
  return d;
}

double FormMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

double distance(const FormMatrix& a, const FormMatrix& b) { return (a - b).max_abs(); }

}  // namespace flagforms
