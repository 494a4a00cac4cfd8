#pragma once

#include <utility>
#include <vector>

#include "cvdesigns/classical_designs.hpp"
#include "cvdesigns/fock_core.hpp"

namespace cvd {

// Nonnegative diagonal regularizer on a truncation: soft cutoff e^{-beta n},
// hard cutoff P_d, or an arbitrary nonnegative diagonal.
struct Regularizer {
  enum class Kind { SoftEnergy, HardCutoff, CustomDiagonal };

  Kind kind;
  TruncatedSpace space;
  double beta = 0.0;           // SoftEnergy
  int cutoff = 0;              // HardCutoff
  Eigen::VectorXd custom;      // CustomDiagonal

  static Regularizer soft(double beta, TruncatedSpace space);
  static Regularizer hard(int d, TruncatedSpace space);
  static Regularizer diagonal(Eigen::VectorXd entries, TruncatedSpace space);

  double entry(int n) const;
  Eigen::VectorXd diagonal_vector() const;
  ComplexOperator as_operator() const;

  // sum_n entry(n)^p.  Soft cutoffs use the closed geometric series (the
  // untruncated value); the others sum the stored diagonal.
  double trace_power(int p) const;
};

// R^{ot t} Pi_t R^{ot t} as a dense operator.
ComplexOperator regularized_projector(const Regularizer& reg, int t);

// Tr Pi_t^{(R)} from the cycle decomposition of S_t:
// (1/t!) sum_sigma prod_{cycles of length L} Tr R^{2L}.
double regularized_projector_trace(const Regularizer& reg, int t);

// Soft-regularized Kerred-phase 2-design on a truncation: Fock atoms with
// weights w_n = e^{-4 beta n} / (2 Tr Pi_2^(R)) and phase coherent states
// sqrt(1-e^{-2 beta}) sum e^{-beta n + i theta n + i phi n^2} |n> carried on
// a uniform (theta, phi) grid with density f(beta) = cosh(beta)/(e^beta (2pi)^2).
// The grid realizes the continuum exactly for every matrix element whose
// Fourier frequency stays below the per-axis point count.
struct RegularizedEnsemble {
  double beta = 0.0;
  int dim = 0;
  int grid_theta = 0;
  int grid_phi = 0;
  std::vector<double> fock_weights;
  double phase_density = 0.0;  // current f; perturbations rescale it
  bool signed_weights = false;

  double total_weight() const;
};

// grid counts of 0 pick the smallest exact grid for the truncation.
RegularizedEnsemble regularized_kerred_design(double beta, int truncation_dim, int grid_theta = 0,
                                              int grid_phi = 0);

// Max element deviation of the assembled second moment from
// Pi_2^(R)/Tr Pi_2^(R) over all Fock 4-tuples below the truncation.
double regularized_second_moment_error(const RegularizedEnsemble& ens);

// Frame potential V_t^{(R)} = E_{psi,phi} |<psi|R^+|phi>|^{2t}.
// The ensemble overload evaluates the Kerred ensemble with its own soft
// regularizer; the point-set overload takes explicit states.  For singular
// R every state must lie in the support of R.
double frame_potential(const RegularizedEnsemble& ens, int t = 2);
double frame_potential(const WeightedPointSet& states, const Regularizer& reg, int t);

double frame_potential_bound(const Regularizer& reg, int t);

// Transfers `mass` of total weight onto Fock atom `n` and renormalizes;
// used to exhibit strictness of the frame-potential bound.
RegularizedEnsemble perturb_fock_weight(const RegularizedEnsemble& ens, int n, double mass);

// First-moment deviation identity for a regularized 2-design:
// empirical E[psi psi] and predicted Pi_1^(R)((Tr R^2) I + R^2)/(2 Tr Pi_2^(R)),
// both diagonal on the truncation.
std::pair<Eigen::VectorXd, Eigen::VectorXd> reduced_moment_deviation(const RegularizedEnsemble& ens);

// max_n |empirical_n / target_n - 1| against the exact 1-design moment
// Pi_1^(R)/Tr Pi_1^(R); equals (1 - e^{-2 beta})/2 = 1/(2 Tr R^2) for the
// Kerred ensemble.
double reduced_moment_relative_deviation(const RegularizedEnsemble& ens);

// Beam-splitter coefficients c_n^(l) = (2l-2n)!(2n)!/(4^l [n!(l-n)!]^2).
Eigen::VectorXd displaced_fock_coefficients(int ell);

// Weights b_l solving sum_{l>=n} b_l c_n^(l) = 1 for all n <= ell_max
// (triangular back-substitution; negative entries appear for ell_max >= 1).
Eigen::VectorXd displaced_fock_weights(int ell_max);

// exp[(pi/4)(a^dag b - a b^dag)] on the two-mode truncation.
Matrix beam_splitter_unitary(int dim);

// Builds sum_l b_l Tr_1(U |ll><ll| U^dag) and compares against
// sum_{n<=ell_max} |2n><2n| on Fock indices <= 2 ell_max.
double verify_displaced_fock_design(int ell_max, int dim);

}  // namespace cvd
