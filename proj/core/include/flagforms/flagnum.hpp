#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flagforms/charpoly.hpp"
#include "flagforms/combinat.hpp"
#include "flagforms/expression.hpp"
#include "flagforms/extform.hpp"
#include "flagforms/formlab.hpp"

namespace flagforms {

// The pair 0 <= ell < l <= m selecting U_l / U_ell.
struct UniversalSpec {
  int ell = 0;
  int l = 1;
};

// Affine chart (z, zeta) on F_rho(E) around the standard flag over a base
// point with n coordinates. Generators of the form algebra: dz_1..dz_n,
// then dzeta_p for each chart pair p.
class FlagChart {
 public:
  FlagChart(DimensionSequence rho, int n);

  const DimensionSequence& rho() const { return rho_; }
  int rank() const { return rho_.rank(); }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(pairs_.size()); }
  int generators() const { return n_ + dim(); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  // Coordinate index of zeta_{lambda mu} (1-based indices), or -1.
  int coordinate(int lambda, int mu) const;
  int zeta_generator(int p) const { return n_ + p; }

  void check(const UniversalSpec& spec) const;
  // 0-based ambient indices of the frame of U_l / U_ell.
  std::vector<int> block(const UniversalSpec& spec) const;
  // 0-based ambient indices of the frame of U_ell (those > r - rho_ell).
  std::vector<int> below(const UniversalSpec& spec) const;

 private:
  DimensionSequence rho_;
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

// Column alpha: coefficients of eps_alpha = e_alpha + sum zeta_{lambda alpha} e_lambda.
Eigen::MatrixXcd frames_eps(const FlagChart& chart, const Eigen::VectorXcd& zeta);

// Ambient model metric <e_a, e_b> = delta_ab - sum c_{jkab} z_j conj(z_k).
// Throws std::domain_error when it is not positive definite.
Eigen::MatrixXcd ambient_metric(const CurvatureTensor& c, const Eigen::VectorXcd& z);

// G_ab = <eps_a, eps_b> at z = 0 (flat metric at the center).
Eigen::MatrixXcd gram(const FlagChart& chart, const Eigen::VectorXcd& zeta);
Eigen::MatrixXcd gram(const FlagChart& chart, const CurvatureTensor& c, const Eigen::VectorXcd& z,
                      const Eigen::VectorXcd& zeta);

// Induced metric on U_l / U_ell in the frame of images of eps_alpha: the Gram
// block for sub-bundles, its Schur complement for quotients.
Eigen::MatrixXcd metric_universal(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                                  const Eigen::VectorXcd& z, const Eigen::VectorXcd& zeta);

// Coefficients u_{alpha mu} of the orthogonal lift
// p*(eps~_alpha) = eps_alpha + sum_mu u_{alpha mu} eps_mu (rows: block, columns: U_ell frame).
Eigen::MatrixXcd splitting_coefficients(const FlagChart& chart, const UniversalSpec& spec,
                                        const CurvatureTensor& c, const Eigen::VectorXcd& z,
                                        const Eigen::VectorXcd& zeta);

// Closed-form curvature of U_l/U_ell at the chart center:
// entry(alpha,beta) = Theta_{beta alpha} - sum_{lambda <= r-rho_l} dzeta_{lambda alpha} ^ conj(dzeta_{lambda beta})
//                    + sum_{mu > r-rho_ell} dzeta_{beta mu} ^ conj(dzeta_{alpha mu}).
FormMatrix curvature_center(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c);

// Unitary matrix whose trailing columns span each U_l at the flag zeta
// (Gram-Schmidt of frames_eps from the last column down).
Eigen::MatrixXcd orthonormal_frame(const FlagChart& chart, const Eigen::VectorXcd& zeta);

// Horizontal curvature of U_l/U_ell at the flag given by the unitary V, as
// an r x r ambient matrix of forms: conj(V_b) V_b^T K conj(V_b) V_b^T, where
// V_b are the block columns and K the base curvature matrix. Throws if V is
// not unitary within 1e-10.
FormMatrix theta_intrinsic(const FlagChart& chart, const UniversalSpec& spec, const Eigen::MatrixXcd& v,
                           const CurvatureTensor& c);

// Moves a curvature matrix written in the frame given by the columns of F
// (r x k) to the ambient r x r representation, and back.
FormMatrix frame_to_ambient(const FormMatrix& m, const Eigen::MatrixXcd& frame);
FormMatrix ambient_to_frame(const FormMatrix& m, const Eigen::MatrixXcd& frame);

// Columns (1 - P_below) eps_alpha for alpha in the block: the frame of
// U_l/U_ell realised inside U_ell^perp.
Eigen::MatrixXcd quotient_frame(const FlagChart& chart, const UniversalSpec& spec, const Eigen::VectorXcd& zeta);

// Keeps only dz ^ conj(dz) terms.
FormMatrix horizontal_part(const FormMatrix& m, int n);
// Drops dz ^ conj(dz) terms.
FormMatrix non_horizontal_part(const FormMatrix& m, int n);

struct CurvatureOptions {
  double fd_step = 1e-3;
  // Also compute the dz ^ conj(dzeta) and dzeta ^ conj(dz) blocks by finite
  // differences. They vanish identically at z = 0, so this is a check only.
  bool mixed_blocks = false;
  double hermitian_tolerance = 1e-4;
  // Difference in the chart re-centered at zeta by a unitary change of basis
  // and map back exactly. Direct differencing of the original chart loses
  // all accuracy for |zeta| >> 1.
  bool recenter = true;
};

struct CurvatureSample {
  FormMatrix theta;
  double hermitian_defect = 0.0;  // relative, before symmetrization
  double mixed_max = 0.0;         // largest mixed-block coefficient (if computed)
};

// Curvature of U_l/U_ell at (x_0, flag(zeta)) from the induced metric:
// K_ab = -(H_{a bbar} - H_a H^{-1} H_{bbar}) H^{-1}. Second derivatives in z
// are exact; zeta derivatives use fourth-order central differences with step
// fd_step * (1 + |zeta|).
CurvatureSample curvature_at(const FlagChart& chart, const UniversalSpec& spec, const CurvatureTensor& c,
                             const Eigen::VectorXcd& zeta, const CurvatureOptions& options = {});

struct SamplerConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: FLAGFORMS_THREADS or hardware concurrency
  std::size_t chunk = 2048;
  double fd_step = 1e-3;
};

// Worker count used when SamplerConfig::threads is 0.
int default_thread_count();

struct BaseCoefficient {
  ExtForm::Mask holo = 0;
  ExtForm::Mask anti = 0;
  Complex estimate;
  double std_error = 0.0;
};

struct NumericPushforward {
  int k = 0;  // base bidegree (k,k); negative when the input degree is below d_rho
  int n = 0;
  bool exact_zero = false;
  ExtForm estimate;
  std::vector<BaseCoefficient> coefficients;
  std::size_t samples = 0;
  std::size_t resampled = 0;
};

// Monte Carlo fiber integral of F (a polynomial in universal Chern forms)
// over the chart, with the product Fubini-Study proposal in each zeta_p.
NumericPushforward pushforward_numeric(const FlagChart& chart, const Expr& f, const CurvatureTensor& c,
                                       const SamplerConfig& sampler);

// Evaluates a Chern polynomial on the Chern forms of the base curvature.
ExtForm evaluate_on_chern_forms(const ChernPoly& p, const std::vector<ExtForm>& chern);

struct ResidualEntry {
  ExtForm::Mask holo = 0;
  ExtForm::Mask anti = 0;
  Complex estimate;
  Complex truth;
  double std_error = 0.0;
};

struct ResidualReport {
  ChernPoly phi;
  std::vector<ResidualEntry> entries;
  double error_norm = 0.0;  // Frobenius norm of estimate - truth
  double truth_norm = 0.0;
  double std_error_norm = 0.0;
  double residual = 0.0;  // error_norm / truth_norm (error_norm when truth is 0)
  bool consistent = false;  // error_norm <= 3 * std_error_norm (or both tiny)
  std::size_t samples = 0;
  std::size_t resampled = 0;
};

ResidualReport verify_main_theorem(const FlagChart& chart, const Expr& f, const CurvatureTensor& c,
                                   const SamplerConfig& sampler);

}  // namespace flagforms
