#include "flagforms/flagnum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "flagforms/gysin.hpp"
#include "flagforms/random.hpp"
#include "flagforms/rootcalc.hpp"

namespace flagforms {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Mask = ExtForm::Mask;

namespace {

constexpr Complex kI(0.0, 1.0);

MatrixXcd take(const MatrixXcd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  }
  return out;
}

// Induced metric from a full Gram matrix.
MatrixXcd induced_metric(const MatrixXcd& g, const std::vector<int>& block, const std::vector<int>& below) {
  MatrixXcd gii = take(g, block, block);
  if (below.empty()) return gii;
  const MatrixXcd gij = take(g, block, below);
  const MatrixXcd gjj = take(g, below, below);
  const MatrixXcd gji = take(g, below, block);
  return gii - gij * gjj.llt().solve(gji);
}

// Evaluates the induced metric of one universal bundle as a function of (z, zeta).
class MetricModel {
 public:
  MetricModel(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c)
      : chart_(chart), c_(c), block_(chart.block(spec)), below_(chart.below(spec)) {}

  MatrixXcd operator()(const VectorXcd& z, const VectorXcd& zeta) const {
    return induced_metric(gram(chart_, c_, z, zeta), block_, below_);
  }

  MatrixXcd at_center_fiber(const VectorXcd& zeta) const {
    return induced_metric(gram(chart_, zeta), block_, below_);
  }

  const std::vector<int>& block() const { return block_; }
  const std::vector<int>& below() const { return below_; }

 private:
  const FlagChart& chart_;
  const CurvatureTensor& c_;
  std::vector<int> block_;
  std::vector<int> below_;
};

using CoefficientMap = std::map<Mask, MatrixXcd>;

CoefficientMap coefficient_matrices(const FormMatrix& m) {
  CoefficientMap out;
  const int s = m.size();
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      for (const auto& [key, c] : m(a, b).terms()) {
        auto it = out.find(key);
        if (it == out.end()) it = out.emplace(key, MatrixXcd::Zero(s, s)).first;
        it->second(a, b) = c;
      }
    }
  }
  return out;
}

FormMatrix from_coefficients(const CoefficientMap& cm, int size, int generators) {
  FormMatrix out(size, generators);
  for (const auto& [key, mat] : cm) {
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        if (mat(a, b) != Complex(0.0)) out(a, b).add(key, mat(a, b));
      }
    }
  }
  return out;
}

MatrixXcd pseudo_inverse(const MatrixXcd& f) {
  const MatrixXcd fh = f.adjoint();
  return (fh * f).ldlt().solve(fh);
}

// Fourth-order stencils.
constexpr int kOffsets[4] = {-2, -1, 1, 2};
constexpr double kFirstWeights[4] = {1.0, -8.0, 8.0, -1.0};  // / 12h

}  // namespace

FlagChart::FlagChart(DimensionSequence rho, int n) : rho_(std::move(rho)), n_(n), pairs_(chart_pairs(rho_)) {
  if (n < 0) throw std::invalid_argument("base dimension must be non-negative");
  if (generators() > ExtForm::kMaxGenerators) throw std::invalid_argument("chart has too many coordinates");
}

int FlagChart::coordinate(int lambda, int mu) const {
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (pairs_[p].first == lambda && pairs_[p].second == mu) return static_cast<int>(p);
  }
  return -1;
}

void FlagChart::check(const UniversalSpec& spec) const {
  if (spec.ell < 0 || spec.l > rho_.length() || spec.ell >= spec.l) {
    throw std::invalid_argument("universal bundle indices must satisfy 0 <= ell < l <= m");
  }
}

std::vector<int> FlagChart::block(const UniversalSpec& spec) const {
  check(spec);
  const auto [lo, hi] = rho_.block_range(spec.ell, spec.l);
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i - 1);
  return out;
}

std::vector<int> FlagChart::below(const UniversalSpec& spec) const {
  check(spec);
  std::vector<int> out;
  for (int i = rank() - rho_[spec.ell] + 1; i <= rank(); ++i) out.push_back(i - 1);
  return out;
}

MatrixXcd frames_eps(const FlagChart& chart, const VectorXcd& zeta) {
  if (zeta.size() != chart.dim()) throw std::invalid_argument("zeta has wrong length");
  MatrixXcd eps = MatrixXcd::Identity(chart.rank(), chart.rank());
  for (int p = 0; p < chart.dim(); ++p) {
    const auto [lambda, mu] = chart.pairs()[static_cast<std::size_t>(p)];
    eps(lambda - 1, mu - 1) = zeta(p);
  }
  return eps;
}

MatrixXcd ambient_metric(const CurvatureTensor& c, const VectorXcd& z) {
  if (z.size() != c.n()) throw std::invalid_argument("z has wrong length");
  MatrixXcd m = MatrixXcd::Identity(c.r(), c.r());
  for (int j = 0; j < c.n(); ++j) {
    for (int k = 0; k < c.n(); ++k) {
      const Complex w = z(j) * std::conj(z(k));
      if (w == Complex(0.0)) continue;
      for (int a = 0; a < c.r(); ++a) {
        for (int b = 0; b < c.r(); ++b) m(a, b) -= c.at(j, k, a, b) * w;
      }
    }
  }
  Eigen::LLT<MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("model metric is not positive definite; choose a smaller base offset");
  }
  return m;
}

MatrixXcd gram(const FlagChart& chart, const VectorXcd& zeta) {
  const MatrixXcd eps = frames_eps(chart, zeta);
  return eps.transpose() * eps.conjugate();
}

MatrixXcd gram(const FlagChart& chart, const CurvatureTensor& c, const VectorXcd& z, const VectorXcd& zeta) {
  if (c.r() != chart.rank()) throw std::invalid_argument("curvature tensor rank does not match the chart");
  const MatrixXcd eps = frames_eps(chart, zeta);
  if (z.size() == 0 || z.isZero(0.0)) return eps.transpose() * eps.conjugate();
  return eps.transpose() * ambient_metric(c, z) * eps.conjugate();
}

MatrixXcd metric_universal(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                           const VectorXcd& z, const VectorXcd& zeta) {
  return MetricModel(chart, spec, c)(z, zeta);
}

MatrixXcd splitting_coefficients(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                                 const VectorXcd& z, const VectorXcd& zeta) {
  const std::vector<int> block = chart.block(spec);
  const std::vector<int> below = chart.below(spec);
  if (below.empty()) return MatrixXcd(static_cast<Eigen::Index>(block.size()), 0);
  const MatrixXcd g = gram(chart, c, z, zeta);
  const MatrixXcd gij = take(g, block, below);
  const MatrixXcd gjj = take(g, below, below);
  // u G_JJ = -G_IJ
  return -(gjj.transpose().llt().solve(gij.transpose())).transpose();
}

FormMatrix curvature_center(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c) {
  const std::vector<int> block = chart.block(spec);
  const int g = chart.generators();
  const int r = chart.rank();
  const int size = static_cast<int>(block.size());
  const int top = r - chart.rho()[spec.l];    // lambda <= top
  const int bottom = r - chart.rho()[spec.ell];  // mu > bottom
  FormMatrix m(size, g);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      const int alpha = block[static_cast<std::size_t>(a)] + 1;
      const int beta = block[static_cast<std::size_t>(b)] + 1;
      ExtForm& e = m(a, b);
      for (int j = 0; j < c.n(); ++j) {
        for (int k = 0; k < c.n(); ++k) {
          e += ExtForm::one_one(g, j, k, c.at(j, k, alpha - 1, beta - 1));
        }
      }
      for (int lambda = 1; lambda <= top; ++lambda) {
        const int p = chart.coordinate(lambda, alpha);
        const int q = chart.coordinate(lambda, beta);
        e -= ExtForm::one_one(g, chart.zeta_generator(p), chart.zeta_generator(q));
      }
      for (int mu = bottom + 1; mu <= r; ++mu) {
        const int p = chart.coordinate(beta, mu);
        const int q = chart.coordinate(alpha, mu);
        e += ExtForm::one_one(g, chart.zeta_generator(p), chart.zeta_generator(q));
      }
    }
  }
  return m;
}

MatrixXcd orthonormal_frame(const FlagChart& chart, const VectorXcd& zeta) {
  const MatrixXcd eps = frames_eps(chart, zeta);
  const int r = chart.rank();
  MatrixXcd v(r, r);
  for (int a = r - 1; a >= 0; --a) {
    VectorXcd w = eps.col(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = r - 1; b > a; --b) w -= v.col(b) * v.col(b).dot(w);
    }
    v.col(a) = w / w.norm();
  }
  return v;
}

FormMatrix frame_to_ambient(const FormMatrix& m, const MatrixXcd& frame) {
  if (frame.cols() != m.size()) throw std::invalid_argument("frame size does not match the matrix");
  const MatrixXcd left = pseudo_inverse(frame).transpose();
  CoefficientMap cm = coefficient_matrices(m);
  for (auto& [key, a] : cm) a = left * a * frame.transpose();
  return from_coefficients(cm, static_cast<int>(frame.rows()), m.generators());
}

FormMatrix ambient_to_frame(const FormMatrix& m, const MatrixXcd& frame) {
  if (frame.rows() != m.size()) throw std::invalid_argument("frame size does not match the matrix");
  const MatrixXcd right = pseudo_inverse(frame).transpose();
  CoefficientMap cm = coefficient_matrices(m);
  for (auto& [key, a] : cm) a = frame.transpose() * a * right;
  return from_coefficients(cm, static_cast<int>(frame.cols()), m.generators());
}

MatrixXcd quotient_frame(const FlagChart& chart, const UniversalSpec& spec, const VectorXcd& zeta) {
  const MatrixXcd eps = frames_eps(chart, zeta);
  const std::vector<int> block = chart.block(spec);
  const std::vector<int> below = chart.below(spec);
  MatrixXcd f(chart.rank(), static_cast<Eigen::Index>(block.size()));
  for (std::size_t i = 0; i < block.size(); ++i) f.col(static_cast<Eigen::Index>(i)) = eps.col(block[i]);
  if (below.empty()) return f;
  MatrixXcd w(chart.rank(), static_cast<Eigen::Index>(below.size()));
  for (std::size_t i = 0; i < below.size(); ++i) w.col(static_cast<Eigen::Index>(i)) = eps.col(below[i]);
  return f - w * pseudo_inverse(w) * f;
}

FormMatrix theta_intrinsic(const FlagChart& chart, const UniversalSpec& spec, const MatrixXcd& v,
                           const CurvatureTensor& c) {
  const int r = chart.rank();
  if (v.rows() != r || v.cols() != r) throw std::invalid_argument("frame matrix must be r x r");
  if ((v.adjoint() * v - MatrixXcd::Identity(r, r)).norm() > 1e-10) {
    throw std::invalid_argument("frame matrix is not unitary");
  }
  const std::vector<int> block = chart.block(spec);
  MatrixXcd vb(r, static_cast<Eigen::Index>(block.size()));
  for (std::size_t i = 0; i < block.size(); ++i) vb.col(static_cast<Eigen::Index>(i)) = v.col(block[i]);
  const MatrixXcd proj = vb.conjugate() * vb.transpose();
  const int g = chart.generators();
  FormMatrix out(r, g);
  for (int j = 0; j < c.n(); ++j) {
    for (int k = 0; k < c.n(); ++k) {
      const MatrixXcd t = proj * c.slice(j, k) * proj;
      const Mask key = ExtForm(g).key(Mask{1} << j, Mask{1} << k);
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) out(a, b).add(key, t(a, b));
      }
    }
  }
  return out;
}

FormMatrix horizontal_part(const FormMatrix& m, int n) {
  FormMatrix out(m.size(), m.generators());
  const Mask low = (Mask{1} << n) - 1;
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) {
      const ExtForm& e = m(a, b);
      for (const auto& [key, c] : e.terms()) {
        if ((e.holo_mask(key) & ~low) == 0 && (e.anti_mask(key) & ~low) == 0) out(a, b).add(key, c);
      }
    }
  }
  return out;
}

FormMatrix non_horizontal_part(const FormMatrix& m, int n) { return m - horizontal_part(m, n); }

namespace {

// Curvature at zeta from the curvature at the center of the chart
// flag(zeta') = V eps(zeta') F_0, V the orthonormal frame at zeta. With
// V = eps(zeta) T (T lower triangular), the coordinate change has
// d zeta'_p = sum_q conj(V)_{lambda_q lambda_p} T_{mu_q mu_p} d zeta_q and the
// quotient frame changes by the block of T.
CurvatureSample recentered(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                           const VectorXcd& zeta, const CurvatureOptions& options) {
  const int n = chart.n();
  const int d = chart.dim();
  const int g = chart.generators();
  const int r = chart.rank();
  const MatrixXcd v = orthonormal_frame(chart, zeta);
  const MatrixXcd t = frames_eps(chart, zeta).triangularView<Eigen::Upper>().solve(v);

  CurvatureTensor rotated(n, r);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const MatrixXcd s = v.transpose() * c.slice(j, k) * v.conjugate();
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) rotated.at(j, k, a, b) = s(a, b);
      }
    }
  }
  CurvatureOptions centered = options;
  centered.recenter = false;
  CurvatureSample base = curvature_at(chart, spec, rotated, VectorXcd::Zero(d), centered);

  // Generator map g'_a = sum_b L_ab g_b.
  MatrixXcd l = MatrixXcd::Identity(g, g);
  for (int p = 0; p < d; ++p) {
    const auto [lp, mp] = chart.pairs()[static_cast<std::size_t>(p)];
    for (int q = 0; q < d; ++q) {
      const auto [lq, mq] = chart.pairs()[static_cast<std::size_t>(q)];
      l(n + p, n + q) = std::conj(v(lq - 1, lp - 1)) * t(mq - 1, mp - 1);
    }
  }
  const std::vector<int> block = chart.block(spec);
  const MatrixXcd gt = take(t, block, block).transpose();
  const MatrixXcd gt_inv = gt.inverse();

  const int size = base.theta.size();
  std::vector<MatrixXcd> prime(static_cast<std::size_t>(g * g), MatrixXcd::Zero(size, size));
  const ExtForm probe(g);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (const auto& [key, coeff] : base.theta(a, b).terms()) {
        const int x = std::countr_zero(probe.holo_mask(key));
        const int y = std::countr_zero(probe.anti_mask(key));
        prime[static_cast<std::size_t>(x * g + y)](a, b) += coeff;
      }
    }
  }
  CurvatureSample out;
  out.hermitian_defect = base.hermitian_defect;
  out.theta = FormMatrix(size, g);
  for (int x = 0; x < g; ++x) {
    for (int y = 0; y < g; ++y) {
      MatrixXcd acc = MatrixXcd::Zero(size, size);
      for (int a = 0; a < g; ++a) {
        if (l(a, x) == Complex(0.0)) continue;
        for (int b = 0; b < g; ++b) {
          if (l(b, y) == Complex(0.0)) continue;
          acc += l(a, x) * std::conj(l(b, y)) * prime[static_cast<std::size_t>(a * g + b)];
        }
      }
      acc = gt_inv * acc * gt;
      const Mask key = probe.key(Mask{1} << x, Mask{1} << y);
      for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b) {
          if (acc(a, b) != Complex(0.0)) out.theta(a, b).add(key, acc(a, b));
        }
      }
      if (options.mixed_blocks && ((x < n) != (y < n))) {
        out.mixed_max = std::max(out.mixed_max, acc.cwiseAbs().maxCoeff());
      }
    }
  }
  return out;
}

}  // namespace

CurvatureSample curvature_at(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                             const VectorXcd& zeta, const CurvatureOptions& options) {
  if (c.r() != chart.rank() || c.n() != chart.n()) {
    throw std::invalid_argument("curvature tensor shape does not match the chart");
  }
  if (zeta.size() != chart.dim()) throw std::invalid_argument("zeta has wrong length");
  if (options.recenter && !zeta.isZero(0.0)) return recentered(chart, spec, c, zeta, options);
  const MetricModel model(chart, spec, c);
  const int n = chart.n();
  const int d = chart.dim();
  const int g = chart.generators();
  const double h = options.fd_step * (1.0 + zeta.norm());
  const double hz = options.fd_step;
  const VectorXcd z0 = VectorXcd::Zero(n);

  const MatrixXcd h0 = model.at_center_fiber(zeta);
  const int size = static_cast<int>(h0.rows());
  const MatrixXcd hinv = h0.llt().solve(MatrixXcd::Identity(size, size));

  // Real variables: 0..2d-1 are (Re, Im) of zeta_p, 2d..2d+2n-1 those of z_j.
  const int nzeta = 2 * d;
  const int nvars = nzeta + (options.mixed_blocks ? 2 * n : 0);
  auto step_of = [&](int v) { return v < nzeta ? h : hz; };
  auto shifted = [&](std::initializer_list<std::pair<int, double>> moves) {
    VectorXcd zt = zeta;
    VectorXcd zz = z0;
    for (const auto& [v, t] : moves) {
      const Complex dir = (v % 2 == 0) ? Complex(1.0) : kI;
      if (v < nzeta) {
        zt(v / 2) += t * dir;
      } else {
        zz((v - nzeta) / 2) += t * dir;
      }
    }
    return zz.isZero(0.0) ? model.at_center_fiber(zt) : model(zz, zt);
  };

  std::vector<MatrixXcd> d1(static_cast<std::size_t>(nvars));
  std::vector<std::vector<MatrixXcd>> d2(static_cast<std::size_t>(nvars), std::vector<MatrixXcd>(static_cast<std::size_t>(nvars)));
  for (int v = 0; v < nvars; ++v) {
    const double s = step_of(v);
    MatrixXcd f[4];
    for (int a = 0; a < 4; ++a) f[a] = shifted({{v, kOffsets[a] * s}});
    d1[static_cast<std::size_t>(v)] = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * s);
    d2[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] =
        (-f[3] + 16.0 * f[2] - 30.0 * h0 + 16.0 * f[1] - f[0]) / (12.0 * s * s);
  }
  auto need_pair = [&](int v, int w) {
    if (v < nzeta && w < nzeta) return true;
    return (v < nzeta) != (w < nzeta);  // mixed z / zeta pairs only
  };
  for (int v = 0; v < nvars; ++v) {
    for (int w = v + 1; w < nvars; ++w) {
      if (!need_pair(v, w)) continue;
      const double sv = step_of(v);
      const double sw = step_of(w);
      MatrixXcd acc = MatrixXcd::Zero(size, size);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          acc += kFirstWeights[a] * kFirstWeights[b] * shifted({{v, kOffsets[a] * sv}, {w, kOffsets[b] * sw}});
        }
      }
      acc /= 144.0 * sv * sw;
      d2[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = acc;
      d2[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] = acc;
    }
  }

  // Holomorphic coordinates: index a < d is zeta_a, a >= d is z_{a-d}.
  const int ncoords = d + (options.mixed_blocks ? n : 0);
  auto re = [&](int a) { return a < d ? 2 * a : nzeta + 2 * (a - d); };
  auto hol = [&](int a) -> MatrixXcd {
    return 0.5 * (d1[static_cast<std::size_t>(re(a))] - kI * d1[static_cast<std::size_t>(re(a) + 1)]);
  };
  auto antihol = [&](int a) -> MatrixXcd {
    return 0.5 * (d1[static_cast<std::size_t>(re(a))] + kI * d1[static_cast<std::size_t>(re(a) + 1)]);
  };
  auto levi = [&](int a, int b) -> MatrixXcd {
    const auto xa = static_cast<std::size_t>(re(a)), ya = xa + 1;
    const auto xb = static_cast<std::size_t>(re(b)), yb = xb + 1;
    return 0.25 * (d2[xa][xb] + d2[ya][yb] + kI * (d2[xa][yb] - d2[ya][xb]));
  };
  auto generator_of = [&](int a) { return a < d ? chart.zeta_generator(a) : a - d; };

  // P_ab = K_ab H, which satisfies P_ab^H = P_ba.
  std::map<std::pair<int, int>, MatrixXcd> p;
  for (int a = 0; a < ncoords; ++a) {
    for (int b = 0; b < ncoords; ++b) {
      if (a >= d && b >= d) continue;  // z z-bar block is exact below
      p[{a, b}] = -(levi(a, b) - hol(a) * hinv * antihol(b));
    }
  }
  // Exact z z-bar block: first z-derivatives vanish at z = 0, so
  // P_jk = -d_j dbar_k H, taken from the Schur complement.
  const MatrixXcd eps = frames_eps(chart, zeta);
  const MatrixXcd gfull = eps.transpose() * eps.conjugate();
  const auto& block = model.block();
  const auto& below = model.below();
  std::vector<std::tuple<int, int, MatrixXcd>> exact_block;
  MatrixXcd a_mat, b_mat;
  if (!below.empty()) {
    const MatrixXcd gjj = take(gfull, below, below);
    a_mat = take(gfull, block, below) * gjj.llt().solve(MatrixXcd::Identity(gjj.rows(), gjj.cols()));
    b_mat = gjj.llt().solve(take(gfull, below, block));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const MatrixXcd g2 = -(eps.transpose() * c.slice(j, k) * eps.conjugate());
      MatrixXcd s2 = take(g2, block, block);
      if (!below.empty()) {
        s2 += -take(g2, block, below) * b_mat - a_mat * take(g2, below, block) +
              a_mat * take(g2, below, below) * b_mat;
      }
      exact_block.emplace_back(j, k, -s2);
    }
  }

  double defect = 0.0;
  double scale = h0.cwiseAbs().maxCoeff();
  for (const auto& [j, k, m] : exact_block) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  for (const auto& [ab, m] : p) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  for (const auto& [ab, m] : p) {
    const MatrixXcd& other = p.at({ab.second, ab.first});
    defect = std::max(defect, (m.adjoint() - other).cwiseAbs().maxCoeff());
  }
  CurvatureSample out;
  out.hermitian_defect = scale > 0.0 ? defect / scale : 0.0;
  if (out.hermitian_defect > options.hermitian_tolerance) {
    throw std::runtime_error("finite-difference curvature is not Hermitian (relative defect " +
                             std::to_string(out.hermitian_defect) + "); reduce the step");
  }

  out.theta = FormMatrix(size, g);
  auto deposit = [&](int ga, int gb, const MatrixXcd& k) {
    const Mask key = ExtForm(g).key(Mask{1} << ga, Mask{1} << gb);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) out.theta(i, j).add(key, k(i, j));
    }
  };
  for (const auto& [ab, m] : p) {
    const MatrixXcd sym = 0.5 * (m + p.at({ab.second, ab.first}).adjoint());
    const MatrixXcd k = sym * hinv;
    deposit(generator_of(ab.first), generator_of(ab.second), k);
    if (ab.first >= d || ab.second >= d) out.mixed_max = std::max(out.mixed_max, k.cwiseAbs().maxCoeff());
  }
  for (const auto& [j, k, m] : exact_block) deposit(j, k, m * hinv);

  return out;
}

int default_thread_count() {
  if (const char* env = std::getenv("FLAGFORMS_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ExtForm evaluate_on_chern_forms(const ChernPoly& p, const std::vector<ExtForm>& chern) {
  if (chern.size() != static_cast<std::size_t>(p.rank()) + 1) {
    throw std::invalid_argument("need c_0..c_r to evaluate a Chern polynomial");
  }
  const int g = chern.front().generators();
  ExtForm out(g);
  for (const auto& [e, coeff] : p.poly().terms()) {
    ExtForm term = ExtForm::scalar(g, to_double(coeff));
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (int t = 0; t < e[j]; ++t) term = wedge(term, chern[j + 1]);
    }
    out += term;
  }
  return out;
}

namespace {

struct BaseSlot {
  Mask holo = 0;
  Mask anti = 0;
  Mask chart_key = 0;
  Complex factor;  // coefficient of dz_J ^ dzbar_K ^ vol in canonical order
};

struct ChunkSums {
  std::vector<double> sum_re, sum_im, sq_re, sq_im;
  std::size_t resampled = 0;
};

std::vector<Mask> subsets(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

}  // namespace

NumericPushforward pushforward_numeric(const FlagChart& chart, const Expr& f, const CurvatureTensor& c,
                                       const SamplerConfig& sampler) {
  const DimensionSequence& rho = chart.rho();
  validate(f, rho);
  const auto deg = homogeneous_degree(f);
  if (!deg) throw std::invalid_argument("integrand is not weighted-homogeneous");
  const int n = chart.n();
  const int d = chart.dim();
  const int g = chart.generators();

  NumericPushforward out;
  out.n = n;
  out.k = *deg - d;
  out.estimate = ExtForm(n);
  if (out.k < 0 || out.k > n) {
    out.exact_zero = true;
    return out;
  }
  if (sampler.samples == 0) throw std::invalid_argument("need at least one sample");

  // Vertical volume prod_p (i/2) dzeta_p ^ conj(dzeta_p).
  ExtForm vol = ExtForm::scalar(g, 1.0);
  for (int p = 0; p < d; ++p) {
    vol = wedge(vol, ExtForm::one_one(g, chart.zeta_generator(p), chart.zeta_generator(p), 0.5 * kI));
  }
  std::vector<BaseSlot> slots;
  for (Mask hj : subsets(n, out.k)) {
    for (Mask ak : subsets(n, out.k)) {
      const ExtForm beta = wedge(ExtForm::monomial(g, hj, ak), vol);
      const auto& [key, coeff] = *beta.terms().begin();
      slots.push_back({hj, ak, key, coeff});
    }
  }

  std::vector<UniversalSpec> specs;
  std::map<std::pair<int, int>, std::size_t> spec_index;
  std::vector<const Expr*> stack{&f};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (e->kind == Expr::Kind::Chern) {
      const UniversalBundle u = resolve(e->bundle, rho);
      if (spec_index.emplace(std::make_pair(u.ell, u.l), specs.size()).second) specs.push_back({u.ell, u.l});
    }
    for (const Expr& child : e->children) stack.push_back(&child);
  }

  CurvatureOptions opts;
  opts.fd_step = sampler.fd_step;
  const std::size_t nslots = slots.size();

  auto sample_values = [&](std::size_t index, std::vector<Complex>& values) -> std::size_t {
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
      CounterRng rng(sampler.seed, {index, attempt});
      VectorXcd zeta(d);
      double weight = 1.0;
      for (int p = 0; p < d; ++p) {
        const Complex num = rng.complex_normal();
        const Complex den = rng.complex_normal();
        zeta(p) = num / den;
        const double t = 1.0 + std::norm(zeta(p));
        weight *= std::numbers::pi * t * t;
      }
      bool ok = std::isfinite(weight) && zeta.allFinite();
      if (ok) {
        try {
          std::vector<std::vector<ExtForm>> chern(specs.size());
          for (std::size_t s = 0; s < specs.size(); ++s) {
            chern[s] = chern_forms(curvature_at(chart, specs[s], c, zeta, opts).theta);
          }
          auto leaf = [&](int j, const BundleRef& b) -> ExtForm {
            const UniversalBundle u = resolve(b, rho);
            return chern[spec_index.at({u.ell, u.l})][static_cast<std::size_t>(j)];
          };
          auto constant = [&](const Rational& q) { return ExtForm::scalar(g, to_double(q)); };
          const ExtForm value = evaluate<ExtForm>(f, leaf, constant);
          for (std::size_t s = 0; s < nslots; ++s) {
            const auto it = value.terms().find(slots[s].chart_key);
            const Complex v = it == value.terms().end() ? Complex(0.0) : it->second / slots[s].factor;
            values[s] = v * weight;
            if (!std::isfinite(values[s].real()) || !std::isfinite(values[s].imag())) ok = false;
          }
        } catch (const std::runtime_error&) {
          ok = false;
        } catch (const std::domain_error&) {
          ok = false;
        }
      }
      if (ok) return static_cast<std::size_t>(attempt);
    }
    throw std::runtime_error("Monte Carlo sample kept producing non-finite values");
  };

  const std::size_t chunk = std::max<std::size_t>(sampler.chunk, 1);
  const std::size_t nchunks = (sampler.samples + chunk - 1) / chunk;
  std::vector<ChunkSums> sums(nchunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    std::vector<Complex> values(nslots);
    for (;;) {
      const std::size_t ci = next.fetch_add(1);
      if (ci >= nchunks) return;
      ChunkSums& cs = sums[ci];
      cs.sum_re.assign(nslots, 0.0);
      cs.sum_im.assign(nslots, 0.0);
      cs.sq_re.assign(nslots, 0.0);
      cs.sq_im.assign(nslots, 0.0);
      const std::size_t begin = ci * chunk;
      const std::size_t end = std::min(sampler.samples, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) {
          cs.resampled += sample_values(i, values);
          for (std::size_t s = 0; s < nslots; ++s) {
            cs.sum_re[s] += values[s].real();
            cs.sum_im[s] += values[s].imag();
            cs.sq_re[s] += values[s].real() * values[s].real();
            cs.sq_im[s] += values[s].imag() * values[s].imag();
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(nchunks);
        return;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(sampler.threads > 0 ? sampler.threads : default_thread_count(),
                                                static_cast<int>(nchunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> sre(nslots, 0.0), sim(nslots, 0.0), qre(nslots, 0.0), qim(nslots, 0.0);
  for (const ChunkSums& cs : sums) {
    out.resampled += cs.resampled;
    for (std::size_t s = 0; s < nslots; ++s) {
      sre[s] += cs.sum_re[s];
      sim[s] += cs.sum_im[s];
      qre[s] += cs.sq_re[s];
      qim[s] += cs.sq_im[s];
    }
  }
  const double nn = static_cast<double>(sampler.samples);
  out.samples = sampler.samples;
  for (std::size_t s = 0; s < nslots; ++s) {
    const double mre = sre[s] / nn;
    const double mim = sim[s] / nn;
    double var = 0.0;
    if (sampler.samples > 1) {
      var = (std::max(0.0, qre[s] / nn - mre * mre) + std::max(0.0, qim[s] / nn - mim * mim)) * nn / (nn - 1.0);
    }
    BaseCoefficient bc{slots[s].holo, slots[s].anti, Complex(mre, mim), std::sqrt(var / nn)};
    out.coefficients.push_back(bc);
    out.estimate.add(out.estimate.key(bc.holo, bc.anti), bc.estimate);
  }
  return out;
}

ResidualReport verify_main_theorem(const FlagChart& chart, const Expr& f, const CurvatureTensor& c,
                                   const SamplerConfig& sampler) {
  const DimensionSequence& rho = chart.rho();
  ResidualReport rep;
  rep.phi = pushforward_determinantal(expand_expression(f, rho), rho);
  const ExtForm truth = evaluate_on_chern_forms(rep.phi, chern_forms(curvature_matrix(c, chart.n())));
  const NumericPushforward num = pushforward_numeric(chart, f, c, sampler);
  rep.samples = num.samples;
  rep.resampled = num.resampled;

  std::set<Mask> keys;
  for (const auto& [key, v] : truth.terms()) keys.insert(key);
  std::map<Mask, const BaseCoefficient*> by_key;
  for (const auto& bc : num.coefficients) {
    const Mask key = truth.key(bc.holo, bc.anti);
    by_key[key] = &bc;
    keys.insert(key);
  }
  double err2 = 0.0, truth2 = 0.0, se2 = 0.0;
  for (Mask key : keys) {
    ResidualEntry e;
    e.holo = truth.holo_mask(key);
    e.anti = truth.anti_mask(key);
    const auto it = truth.terms().find(key);
    e.truth = it == truth.terms().end() ? Complex(0.0) : it->second;
    if (auto b = by_key.find(key); b != by_key.end()) {
      e.estimate = b->second->estimate;
      e.std_error = b->second->std_error;
    }
    err2 += std::norm(e.estimate - e.truth);
    truth2 += std::norm(e.truth);
    se2 += e.std_error * e.std_error;
    rep.entries.push_back(e);
  }
  rep.error_norm = std::sqrt(err2);
  rep.truth_norm = std::sqrt(truth2);
  rep.std_error_norm = std::sqrt(se2);
  rep.residual = rep.truth_norm > 0.0 ? rep.error_norm / rep.truth_norm : rep.error_norm;
  const double floor = 1e-9 * std::max(1.0, rep.truth_norm);
  rep.consistent = rep.error_norm <= 3.0 * rep.std_error_norm + floor;
  return rep;
}

}  // namespace flagforms
