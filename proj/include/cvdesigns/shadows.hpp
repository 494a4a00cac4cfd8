#pragma once

#include <vector>

#include "cvdesigns/fock_core.hpp"
#include "cvdesigns/rng.hpp"

namespace cvd {

// One POVM outcome: a Fock count or a Kerred phase-state label.
struct ShadowRecord {
  enum class Branch { Fock, Phase };
  Branch branch = Branch::Fock;
  int n = 0;
  double theta = 0.0;
  double phi = 0.0;
};

// Hermitian observable; structured forms carry closed-form estimators.
struct Observable {
  enum class Form { Dense, Diagonal, FlipPair, FlipPairPlusDiag };

  Form form = Form::Dense;
  Matrix dense;
  Eigen::VectorXd diag;
  int a = 0, b = 0, c = 0;

  static Observable make_dense(Matrix m);
  static Observable make_diagonal(Eigen::VectorXd d);
  // |a><b| + |b><a|
  static Observable flip_pair(int a, int b);
  // |a><b| + |b><a| + |c><c|
  static Observable flip_pair_plus_diag(int a, int b, int c);

  Matrix to_matrix(int dim) const;
  double trace(int dim) const;
};

struct ShadowPlan {
  long N = 1;
  int K = 1;
  double epsilon = 0.0, delta = 0.0;
  double c = 0.0, d = 0.0;
};

// N = ceil(log(2M/delta) (d-c)^2 / (2 eps^2)), K = 1 (Hoeffding route).
ShadowPlan hoeffding_plan(int M, double delta, double epsilon, double c, double d);

// Exact estimator range c < Tr(rho_hat O) < d for FlipPair observables under
// the sampling normalization: +-(2 + 1/pi).
std::pair<double, double> flip_pair_estimator_range();
// Range for the FlipPairPlusDiag family: (-2 - 1/pi + 1/(2pi), 2pi).
std::pair<double, double> flip_pair_plus_diag_estimator_range();

// Samples the Fock + Kerred-phase POVM of the probability-normalized rigged
// 2-design: Fock branch with probability 1/(2pi+1), otherwise phi uniform
// and theta by inverse CDF of <theta|rho|theta>_phi.
class ShadowSampler {
 public:
  // rho must be Hermitian PSD with unit trace on the truncation
  // (renormalized when the defect is below trace_tol, rejected otherwise).
  explicit ShadowSampler(ComplexOperator rho, double trace_tol = 1e-6, int cdf_grid = 4096);

  ShadowRecord sample(StreamRng& rng) const;
  const ComplexOperator& rho() const { return rho_; }

 private:
  double theta_cdf(double theta, const std::vector<Complex>& modes) const;

  ComplexOperator rho_;
  Eigen::VectorXd diag_probs_;
  int cdf_grid_;
};

// Tr(rho_hat O) for rho_hat = (2 pi + 1)|chi><chi| - I.  Hermiticity makes
// the value real; a residual imaginary part above 1e-10 throws.
double shadow_expectation(const ShadowRecord& rec, const Observable& obs, int dim);

// (2 pi + 1)|chi><chi| - I restricted to the truncation.
Matrix shadow_matrix(const ShadowRecord& rec, int dim);

// Median over K groups of the per-group sample mean.
double median_of_means(const std::vector<std::vector<ShadowRecord>>& groups, const Observable& obs,
                       int dim);

struct VarianceCheck {
  double empirical = 0.0;
  double analytic = 0.0;
  double empirical_se = 0.0;  // standard error of the empirical variance
};

// Per-sample variance of Tr(rho_hat O): empirical over N draws vs the
// analytic value (2pi+1)^2 T3 - (Tr O + <O>)^2 with T3 the Diophantine
// triple sum of the Kerred 2-design.
VarianceCheck empirical_variance_check(const ComplexOperator& rho, const Observable& obs, long N,
                                       std::uint64_t seed);

// The third-moment term T3 = Int Tr[chi chi O]^2 Tr(rho chi chi) dmu under
// the probability normalization.
double shadow_third_moment(const ComplexOperator& rho, const Observable& obs);

}  // namespace cvd
