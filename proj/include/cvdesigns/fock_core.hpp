#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cvd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Truncated single-mode Fock space spanned by |0>, ..., |D-1>.
struct TruncatedSpace {
  int dim;

  explicit TruncatedSpace(int d);
};

// Dense operator on `copies` tensor factors of a truncated Fock space.
// The matrix has side dim^copies; row/column multi-indices are big-endian
// in the copy index (first factor is the most significant digit).
struct ComplexOperator {
  TruncatedSpace space;
  int copies;
  Matrix mat;

  ComplexOperator(TruncatedSpace s, int t, Matrix m);

  long side() const { return mat.rows(); }
  bool is_hermitian(double tol = 1e-12) const;
};

// Side length above which dense operators are refused.
inline constexpr long kDenseSideCap = 10000;

// dim^copies with an overflow/cap guard.
long tensor_side(int dim, int copies);

struct KrausChannel {
  TruncatedSpace space;
  std::vector<Matrix> kraus;

  // max over basis states of |1 - <n| sum K^dag K |n>|; loss of trace due to
  // truncation is reported by callers, not enforced here.
  double completeness_defect() const;
};

// W_sigma |n_1 ... n_t> = |n_{sigma^-1(1)} ... n_{sigma^-1(t)}>.
// `sigma` maps position i to sigma[i] (0-based one-line notation).
ComplexOperator permutation_operator(const std::vector<int>& sigma, TruncatedSpace space);

// Projector onto the symmetric subspace of t copies: (1/t!) sum_sigma W_sigma.
ComplexOperator symmetric_projector(TruncatedSpace space, int t);

// Trace of the symmetric projector: C(D+t-1, t), the number of multisets.
double symmetric_projector_trace(int dim, int t);

// Lambda_t(a) = <a|Pi_t|a> = (prod_k m_k!)/t! where m_k are the
// multiplicities of the distinct values in a.  Strictly positive.
double lambda_element(const std::vector<int>& a, TruncatedSpace space);

// <a|Pi_t|b>: (a!)/t! if b is a permutation of a, else 0.
double pi_element(const std::vector<int>& a, const std::vector<int>& b);

// Partial trace keeping the listed copies (0-based, strictly increasing).
ComplexOperator partial_trace(const ComplexOperator& op, const std::vector<int>& keep);

// sum_K K rho K^dag.
ComplexOperator apply_channel(const KrausChannel& ch, const ComplexOperator& rho);

// Entrywise Moore-Penrose inverse of a nonnegative diagonal operator:
// 1/r_i where r_i > zero_tol, else 0.
ComplexOperator diagonal_pseudo_inverse(const ComplexOperator& diag_op, double zero_tol = 1e-14);

// Kronecker product (first factor most significant).
Matrix kron(const Matrix& a, const Matrix& b);

// t-fold Kronecker power of a vector.
Vector kron_power(const Vector& v, int t);

// All permutations of {0,...,t-1} in one-line notation.
std::vector<std::vector<int>> all_permutations(int t);

// max_ij |A_ij - B_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

// Largest |eigenvalue| of the Hermitian part-enforced difference A - B.
double spectral_diff(const Matrix& a, const Matrix& b);

}  // namespace cvd
