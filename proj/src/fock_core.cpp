#include "cvdesigns/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cvd {

TruncatedSpace::TruncatedSpace(int d) : dim(d) {
  if (d < 1) throw std::invalid_argument("TruncatedSpace: dim must be >= 1");
}

ComplexOperator::ComplexOperator(TruncatedSpace s, int t, Matrix m)
    : space(s), copies(t), mat(std::move(m)) {
  if (t < 1) throw std::invalid_argument("ComplexOperator: copies must be >= 1");
  const long side = tensor_side(s.dim, t);
  if (mat.rows() != side || mat.cols() != side)
    throw std::invalid_argument("ComplexOperator: matrix side does not match dim^copies");
}

bool ComplexOperator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

long tensor_side(int dim, int copies) {
  long side = 1;
  for (int i = 0; i < copies; ++i) {
    if (side > kDenseSideCap / dim)
      throw std::length_error("tensor_side: dim^copies exceeds dense side cap");
    side *= dim;
  }
  return side;
}

double KrausChannel::completeness_defect() const {
  const int d = space.dim;
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  double defect = 0.0;
  for (int n = 0; n < d; ++n) defect = std::max(defect, std::abs(1.0 - sum(n, n).real()));
  return defect;
}

ComplexOperator permutation_operator(const std::vector<int>& sigma, TruncatedSpace space) {
  const int t = static_cast<int>(sigma.size());
  if (t < 1) throw std::invalid_argument("permutation_operator: t must be >= 1");
  std::vector<bool> seen(t, false);
  for (int v : sigma) {
    if (v < 0 || v >= t || seen[v]) throw std::invalid_argument("permutation_operator: not a permutation");
    seen[v] = true;
  }
  const int d = space.dim;
  const long side = tensor_side(d, t);
  Matrix w = Matrix::Zero(side, side);
  std::vector<long> stride(t);  // stride of copy i in the flat index
  stride[t - 1] = 1;
  for (int i = t - 2; i >= 0; --i) stride[i] = stride[i + 1] * d;
  std::vector<int> digits(t);
  for (long col = 0; col < side; ++col) {
    long rem = col;
    for (int i = 0; i < t; ++i) {
      digits[i] = static_cast<int>(rem / stride[i]);
      rem %= stride[i];
    }
    // W_sigma |n_1...n_t> = |n_{sigma^-1(1)}...n_{sigma^-1(t)}>, i.e. the
    // value at position sigma[i] of the output equals the value at i.
    long row = 0;
    for (int i = 0; i < t; ++i) row += digits[i] * stride[sigma[i]];
    w(row, col) = 1.0;
  }
  return ComplexOperator(space, t, std::move(w));
}

std::vector<std::vector<int>> all_permutations(int t) {
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

ComplexOperator symmetric_projector(TruncatedSpace space, int t) {
  if (t < 1) throw std::invalid_argument("symmetric_projector: t must be >= 1");
  const long side = tensor_side(space.dim, t);
  Matrix acc = Matrix::Zero(side, side);
  const auto perms = all_permutations(t);
  for (const auto& sigma : perms) acc += permutation_operator(sigma, space).mat;
  acc /= static_cast<double>(perms.size());
  return ComplexOperator(space, t, std::move(acc));
}

double symmetric_projector_trace(int dim, int t) {
  // C(dim+t-1, t) without overflow for desk-scale arguments.
  double r = 1.0;
  for (int k = 1; k <= t; ++k) r *= static_cast<double>(dim - 1 + k) / k;
  return r;
}

double lambda_element(const std::vector<int>& a, TruncatedSpace space) {
  if (a.empty()) throw std::invalid_argument("lambda_element: empty tuple");
  for (int v : a)
    if (v < 0 || v >= space.dim) throw std::out_of_range("lambda_element: index out of range");
  return pi_element(a, a);
}

double pi_element(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pi_element: tuple sizes differ");
  std::vector<int> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return 0.0;
  double num = 1.0;
  double run = 1.0;
  for (size_t i = 1; i < sa.size(); ++i) {
    run = (sa[i] == sa[i - 1]) ? run + 1.0 : 1.0;
    num *= run;
  }
  double tfact = 1.0;
  for (size_t k = 2; k <= a.size(); ++k) tfact *= static_cast<double>(k);
  return num / tfact;
}

ComplexOperator partial_trace(const ComplexOperator& op, const std::vector<int>& keep) {
  const int t = op.copies;
  const int d = op.space.dim;
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= t) throw std::invalid_argument("partial_trace: copy index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  }
  std::vector<int> traced;
  for (int i = 0; i < t; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  const int tk = static_cast<int>(keep.size());
  const long side_out = tensor_side(d, tk);
  const long n_traced = traced.empty() ? 1 : tensor_side(d, static_cast<int>(traced.size()));
  std::vector<long> stride(t);
  stride[t - 1] = 1;
  for (int i = t - 2; i >= 0; --i) stride[i] = stride[i + 1] * d;

  Matrix out = Matrix::Zero(side_out, side_out);
  std::vector<int> kd(tk), ld(tk), td(traced.size());
  for (long r = 0; r < side_out; ++r) {
    long rem = r;
    for (int i = tk - 1; i >= 0; --i) {
      kd[i] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (long c = 0; c < side_out; ++c) {
      long cem = c;
      for (int i = tk - 1; i >= 0; --i) {
        ld[i] = static_cast<int>(cem % d);
        cem /= d;
      }
      Complex acc = 0.0;
      for (long m = 0; m < n_traced; ++m) {
        long mm = m;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
          td[i] = static_cast<int>(mm % d);
          mm /= d;
        }
        long row = 0, col = 0;
        for (int i = 0; i < tk; ++i) {
          row += kd[i] * stride[keep[i]];
          col += ld[i] * stride[keep[i]];
        }
        for (size_t i = 0; i < traced.size(); ++i) {
          row += td[i] * stride[traced[i]];
          col += td[i] * stride[traced[i]];
        }
        acc += op.mat(row, col);
      }
      out(r, c) = acc;
    }
  }
  return ComplexOperator(op.space, tk, std::move(out));
}

ComplexOperator apply_channel(const KrausChannel& ch, const ComplexOperator& rho) {
  if (rho.copies != 1) throw std::invalid_argument("apply_channel: rho must be single-copy");
  if (rho.space.dim != ch.space.dim) throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.side(), rho.side());
  for (const auto& k : ch.kraus) out += k * rho.mat * k.adjoint();
  return ComplexOperator(rho.space, 1, std::move(out));
}

ComplexOperator diagonal_pseudo_inverse(const ComplexOperator& diag_op, double zero_tol) {
  const long n = diag_op.side();
  Matrix out = Matrix::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    const double r = diag_op.mat(i, i).real();
    if (r < 0.0) throw std::invalid_argument("diagonal_pseudo_inverse: negative diagonal entry");
    if (r > zero_tol) out(i, i) = 1.0 / r;
  }
  return ComplexOperator(diag_op.space, diag_op.copies, std::move(out));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron_power(const Vector& v, int t) {
  Vector out = v;
  for (int i = 1; i < t; ++i) {
    Vector next(out.size() * v.size());
    for (long a = 0; a < out.size(); ++a)
      for (long b = 0; b < v.size(); ++b) next(a * v.size() + b) = out(a) * v(b);
    out.swap(next);
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

double spectral_diff(const Matrix& a, const Matrix& b) {
  Matrix diff = a - b;
  Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

}  // namespace cvd
