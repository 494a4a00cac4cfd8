#pragma once

#include <cstdint>
#include <vector>

#include "cvdesigns/fock_core.hpp"
#include "cvdesigns/regularized.hpp"

namespace cvd {

// Pure-loss channel L^kappa with Kraus operators
// K_i = sum_m sqrt(C(m+i, i)) (1-kappa^2)^{i/2} kappa^m |m><m+i|.
// Dense Kraus matrices for small truncations; the stripe form carries the
// same numbers as vectors for large-D sums.
KrausChannel loss_kraus(double kappa, int dim, int i_max);

struct LossStripes {
  double kappa = 1.0;
  int dim = 0;
  int i_max = 0;
  // stripe[i][m] = <m|K_i|m+i>, m = 0..dim-1-i
  std::vector<Eigen::VectorXd> stripe;
};

LossStripes loss_stripes(double kappa, int dim, int i_max);

// |phi_R> = (Tr R)^{-1/2} (R^{1/4} ox R^{1/4}) sum |nn>, normalized on the
// truncation; a two-mode squeezed vacuum for soft R, maximally entangled for
// hard R.
Vector tmsv_state(const Regularizer& reg, int dim);

// rho_R = R / Tr R on the truncation.
ComplexOperator thermal_state(const Regularizer& reg);

// TMSV squeezing parameter log[(1 + e^{-beta/2})/sqrt(1 - e^{-beta})].
double tmsv_squeezing(double beta);

// d_R = (Tr R)^2 / Tr R^2 (closed geometric sums for soft cutoffs).
double effective_dimension(const Regularizer& reg);

// F_e^(R) = sum_K |Tr(rho_R K)|^2, by direct Kraus sums on the truncation.
double entanglement_fidelity(const KrausChannel& ch, const Regularizer& reg);
double entanglement_fidelity(const LossStripes& ch, const Regularizer& reg);
// Same quantity through the two-mode purification <phi_R|(I ox D)(phi_R)|phi_R>.
double entanglement_fidelity_two_mode(const LossStripes& ch, const Regularizer& reg);

// Tr[D(rho_R) rho_R] by Kraus sums.
double channel_overlap(const LossStripes& ch, const Regularizer& reg);

// Closed forms for the loss channel under the e^beta = 1 + 1/nbar convention.
double loss_fe_soft(double nbar, double kappa);           // (1 + nbar(1-kappa))^-2
double loss_fe_hard(int d, double kappa);                 // (1-kappa^d)^2 / ((1-kappa)^2 d^2)
double loss_f1_soft(double nbar, double kappa);           // (d_R Fe + 1)/(d_R + 1), d_R = 2 nbar + 1
double loss_f2_soft_halfbeta(double nbar, double kappa);  // appendix substitution chain
double loss_f12_hard(double nbar, double kappa);          // hard cutoff at d = nbar + 1
double coherent_fidelity(double nbar, double kappa);      // 1/(1 + nbar (1-kappa)^2)

enum class FidelityMethod { Relation, DesignExpectation };

// F1^(R) and F2^(R).  Relation evaluates the entanglement-fidelity
// identities with Kraus-sum ingredients; DesignExpectation evaluates the
// defining average over a regularized 2-design (the soft Kerred ensemble in
// closed Fourier-collapsed form, or the finite MUB design for hard cutoffs).
double avg_fidelity_1(const LossStripes& ch, const Regularizer& reg, FidelityMethod method);
double avg_fidelity_2(const LossStripes& ch, const Regularizer& reg, FidelityMethod method);

// Gauss-weighted Monte Carlo of the coherent-state average on a truncation:
// radial coordinate stratified over samples, phase uniform; fully seeded.
double coherent_fidelity_mc(double nbar, double kappa, int dim, long samples, std::uint64_t seed);

struct MomentIdentityReport {
  double operator_deviation = 0.0;  // max element error of E[<psi|A|psi> psi psi]
  double scalar_deviation = 0.0;    // |E[<A><B>] - closed form|
};

// Checks the regularized-2-design moment identities for arbitrary A, B on
// the truncation against the Kerred-ensemble assembly.
MomentIdentityReport moment_identities_check(double beta, int dim, const Matrix& a, const Matrix& b);

struct FidelityReport {
  double kappa = 0.0;
  double nbar = 0.0;
  double fe_soft = 0.0, fe_soft_numeric = 0.0;
  double fe_hard = 0.0, fe_hard_numeric = 0.0;
  double f1_soft = 0.0, f1_soft_numeric = 0.0;
  double f2_soft_halfbeta = 0.0, f2_soft_halfbeta_numeric = 0.0;
  double f12_hard = 0.0, f12_hard_numeric = 0.0;
  double f_coh = 0.0, f_coh_numeric = 0.0;
  double truncation_tail = 0.0;  // soft-regularizer mass above the truncation
};

// Evaluates every closed form and its numeric twin on a kappa grid with the
// parameterization beta = log(1 + 1/nbar), d = floor(nbar) + 1.
std::vector<FidelityReport> loss_curve(double nbar, const std::vector<double>& kappas, int dim,
                                       int i_max, long mc_samples = 100000, std::uint64_t seed = 1);

}  // namespace cvd
