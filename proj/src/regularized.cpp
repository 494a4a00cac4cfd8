#include "cvdesigns/regularized.hpp"

#include <cmath>
#include <stdexcept>

namespace cvd {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

Regularizer Regularizer::soft(double beta, TruncatedSpace space) {
  if (!(beta > 0.0)) throw std::invalid_argument("Regularizer::soft: beta > 0");
  Regularizer r{Kind::SoftEnergy, space, 0.0, 0, {}};
  r.beta = beta;
  return r;
}

Regularizer Regularizer::hard(int d, TruncatedSpace space) {
  if (d < 1 || d > space.dim) throw std::invalid_argument("Regularizer::hard: 1 <= d <= D");
  Regularizer r{Kind::HardCutoff, space, 0.0, 0, {}};
  r.cutoff = d;
  return r;
}

Regularizer Regularizer::diagonal(Eigen::VectorXd entries, TruncatedSpace space) {
  if (entries.size() != space.dim) throw std::invalid_argument("Regularizer::diagonal: length mismatch");
  if ((entries.array() < 0.0).any()) throw std::invalid_argument("Regularizer::diagonal: entries >= 0");
  Regularizer r{Kind::CustomDiagonal, space, 0.0, 0, {}};
  r.custom = std::move(entries);
  return r;
}

double Regularizer::entry(int n) const {
  switch (kind) {
    case Kind::SoftEnergy:
      return std::exp(-beta * n);
    case Kind::HardCutoff:
      return n < cutoff ? 1.0 : 0.0;
    case Kind::CustomDiagonal:
      return custom[n];
  }
  return 0.0;
}

Eigen::VectorXd Regularizer::diagonal_vector() const {
  Eigen::VectorXd v(space.dim);
  for (int n = 0; n < space.dim; ++n) v[n] = entry(n);
  return v;
}

ComplexOperator Regularizer::as_operator() const {
  Matrix m = diagonal_vector().cast<Complex>().asDiagonal();
  return ComplexOperator(space, 1, std::move(m));
}

double Regularizer::trace_power(int p) const {
  if (p < 1) throw std::invalid_argument("trace_power: p >= 1");
  if (kind == Kind::SoftEnergy) return 1.0 / (1.0 - std::exp(-p * beta));
  if (kind == Kind::HardCutoff) return cutoff;
  double s = 0.0;
  for (int n = 0; n < space.dim; ++n) s += std::pow(custom[n], p);
  return s;
}

ComplexOperator regularized_projector(const Regularizer& reg, int t) {
  const ComplexOperator pi = symmetric_projector(reg.space, t);
  Vector big = kron_power(reg.diagonal_vector().cast<Complex>(), t);
  Matrix m = big.asDiagonal() * pi.mat * big.asDiagonal();
  return ComplexOperator(reg.space, t, std::move(m));
}

double regularized_projector_trace(const Regularizer& reg, int t) {
  double acc = 0.0;
  const auto perms = all_permutations(t);
  for (const auto& sigma : perms) {
    std::vector<bool> seen(t, false);
    double contrib = 1.0;
    for (int i = 0; i < t; ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = sigma[j];
        ++len;
      }
      contrib *= reg.trace_power(2 * len);
    }
    acc += contrib;
  }
  return acc / static_cast<double>(perms.size());
}

double RegularizedEnsemble::total_weight() const {
  double s = phase_density * kTwoPi * kTwoPi;
  for (double w : fock_weights) s += w;
  return s;
}

RegularizedEnsemble regularized_kerred_design(double beta, int truncation_dim, int grid_theta,
                                              int grid_phi) {
  if (!(beta > 0.0)) throw std::invalid_argument("regularized_kerred_design: beta > 0");
  if (truncation_dim < 2) throw std::invalid_argument("regularized_kerred_design: D >= 2");
  RegularizedEnsemble ens;
  ens.beta = beta;
  ens.dim = truncation_dim;
  const long f_max = 2L * (truncation_dim - 1);
  ens.grid_theta = grid_theta > 0 ? grid_theta : static_cast<int>(f_max + 1);
  ens.grid_phi = grid_phi > 0 ? grid_phi : static_cast<int>(f_max * (truncation_dim - 1) + 1);
  if (ens.grid_theta <= f_max || ens.grid_phi <= f_max * (truncation_dim - 1))
    throw std::invalid_argument("regularized_kerred_design: grid below the truncation's frequency cap");
  const double x = std::exp(-2.0 * beta);
  // w_n = 4 sinh^2(beta) cosh(beta) e^{-beta(4n+3)} = (1-x)^2 (1+x) x^{2n} / 2
  ens.fock_weights.resize(truncation_dim);
  for (int n = 0; n < truncation_dim; ++n)
    ens.fock_weights[n] = 0.5 * (1.0 - x) * (1.0 - x) * (1.0 + x) * std::pow(x, 2.0 * n);
  ens.phase_density = std::cosh(beta) / (std::exp(beta) * kTwoPi * kTwoPi);
  return ens;
}

double regularized_second_moment_error(const RegularizedEnsemble& ens) {
  const int D = ens.dim;
  const double beta = ens.beta;
  const double x = std::exp(-2.0 * beta);
  const double tr2 = 1.0 / (1.0 - x);              // Tr R^2
  const double tr4 = 1.0 / (1.0 - x * x);          // Tr R^4
  const double trpi2 = 0.5 * (tr2 * tr2 + tr4);    // Tr Pi_2^(R)
  const double phase_amp = ens.phase_density * kTwoPi * kTwoPi * (1.0 - x) * (1.0 - x);
  double max_err = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const long sum_f = a + b - c - d;
          const long sq_f = static_cast<long>(a) * a + static_cast<long>(b) * b -
                            static_cast<long>(c) * c - static_cast<long>(d) * d;
          // the finite grid realizes the torus integral as mod-G deltas
          const bool grid_delta = (sum_f % ens.grid_theta == 0) && (sq_f % ens.grid_phi == 0);
          double emp = grid_delta ? phase_amp * std::exp(-beta * (a + b + c + d)) : 0.0;
          if (a == b && a == c && a == d) emp += ens.fock_weights[a];
          const double pi2 = 0.5 * ((a == c && b == d ? 1.0 : 0.0) + (a == d && b == c ? 1.0 : 0.0));
          const double target = std::exp(-beta * (a + b + c + d)) * pi2 / trpi2;
          max_err = std::max(max_err, std::abs(emp - target));
        }
  return max_err;
}

double frame_potential(const RegularizedEnsemble& ens, int t) {
  if (t != 2) throw std::invalid_argument("frame_potential(ensemble): only t = 2 is assembled");
  const int D = ens.dim;
  const double beta = ens.beta;
  const double x = std::exp(-2.0 * beta);
  // Fock-Fock: <n|R^-1|m> = e^{beta n} delta_nm
  double v_ff = 0.0;
  for (int n = 0; n < D; ++n) v_ff += ens.fock_weights[n] * ens.fock_weights[n] * std::exp(4.0 * beta * n);
  // Fock-grid: |<n|R^-1|psi_g>|^4 = (1-x)^2 for every n and grid point
  double fock_total = 0.0;
  for (double w : ens.fock_weights) fock_total += w;
  const double grid_total = ens.phase_density * kTwoPi * kTwoPi;
  const double v_fg = 2.0 * fock_total * grid_total * (1.0 - x) * (1.0 - x);
  // grid-grid: <psi|R^-1|psi'> depends only on the angle differences, which
  // sweep the same uniform grid
  const double dtheta = kTwoPi / ens.grid_theta;
  const double dphi = kTwoPi / ens.grid_phi;
  double s = 0.0;
  for (int k = 0; k < ens.grid_theta; ++k) {
    const double u = k * dtheta;
    for (int l = 0; l < ens.grid_phi; ++l) {
      const double v = l * dphi;
      // g(u,v) = (1-x) sum_n e^{-beta n} e^{i(u n + v n^2)} via rolling phases
      Complex acc = 0.0;
      Complex zn(1.0, 0.0);                                    // e^{i(u n + v n^2)}
      Complex step = std::exp(Complex(0.0, u + v));            // ratio at n -> n+1 is e^{i(u + (2n+1) v)}
      const Complex step2 = std::exp(Complex(0.0, 2.0 * v));
      double amp = 1.0;
      const double decay = std::exp(-beta);
      for (int n = 0; n < D; ++n) {
        acc += amp * zn;
        zn *= step;
        step *= step2;
        amp *= decay;
      }
      const double a2 = std::norm(acc) * (1.0 - x) * (1.0 - x);
      s += a2 * a2;
    }
  }
  const double v_gg = ens.phase_density * ens.phase_density * kTwoPi * kTwoPi * dtheta * dphi * s;
  return v_ff + v_fg + v_gg;
}

double frame_potential(const WeightedPointSet& states, const Regularizer& reg, int t) {
  if (states.kind != WeightedPointSet::Kind::State)
    throw std::invalid_argument("frame_potential: state points required");
  states.validate();
  const Eigen::VectorXd rdiag = reg.diagonal_vector();
  Eigen::VectorXd rplus(rdiag.size());
  bool singular = false;
  for (long i = 0; i < rdiag.size(); ++i) {
    if (rdiag[i] > 1e-14) {
      rplus[i] = 1.0 / rdiag[i];
    } else {
      rplus[i] = 0.0;
      singular = true;
    }
  }
  if (singular) {
    for (const auto& psi : states.state_points)
      for (long i = 0; i < psi.size(); ++i)
        if (rdiag[i] <= 1e-14 && std::abs(psi[i]) > 1e-12)
          throw std::domain_error("frame_potential: ensemble leaves the support of a singular regularizer");
  }
  double v = 0.0;
  const size_t n = states.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Complex ov = 0.0;
      for (long k = 0; k < rplus.size(); ++k)
        ov += std::conj(states.state_points[i][k]) * rplus[k] * states.state_points[j][k];
      v += states.weights[i] * states.weights[j] * std::pow(std::norm(ov), t);
    }
  return v;
}

double frame_potential_bound(const Regularizer& reg, int t) {
  return 1.0 / regularized_projector_trace(reg, t);
}

RegularizedEnsemble perturb_fock_weight(const RegularizedEnsemble& ens, int n, double mass) {
  if (n < 0 || n >= ens.dim) throw std::invalid_argument("perturb_fock_weight: atom out of range");
  RegularizedEnsemble out = ens;
  out.fock_weights[n] += mass;
  const double total = out.total_weight();
  for (double& w : out.fock_weights) w /= total;
  out.phase_density /= total;
  return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> reduced_moment_deviation(const RegularizedEnsemble& ens) {
  const int D = ens.dim;
  const double x = std::exp(-2.0 * ens.beta);
  const double tr2 = 1.0 / (1.0 - x);
  const double tr4 = 1.0 / (1.0 - x * x);
  const double trpi2 = 0.5 * (tr2 * tr2 + tr4);
  Eigen::VectorXd empirical(D), predicted(D);
  for (int n = 0; n < D; ++n) {
    const double r2 = std::pow(x, n);  // e^{-2 beta n}
    empirical[n] = ens.fock_weights[n] + ens.phase_density * kTwoPi * kTwoPi * (1.0 - x) * r2;
    predicted[n] = r2 * (tr2 + r2) / (2.0 * trpi2);
  }
  return {empirical, predicted};
}

double reduced_moment_relative_deviation(const RegularizedEnsemble& ens) {
  const auto [empirical, predicted] = reduced_moment_deviation(ens);
  (void)predicted;
  const double x = std::exp(-2.0 * ens.beta);
  double dev = 0.0;
  for (int n = 0; n < ens.dim; ++n) {
    const double target = (1.0 - x) * std::pow(x, n);  // Pi_1^(R)/Tr Pi_1^(R)
    dev = std::max(dev, std::abs(empirical[n] / target - 1.0));
  }
  return dev;
}

Eigen::VectorXd displaced_fock_coefficients(int ell) {
  if (ell < 0) throw std::invalid_argument("displaced_fock_coefficients: ell >= 0");
  if (ell > 40) throw std::domain_error("displaced_fock_coefficients: ell <= 40");
  Eigen::VectorXd c(ell + 1);
  for (int n = 0; n <= ell; ++n) {
    // log form: (2l-2n)!(2n)!/(4^l [n!(l-n)!]^2)
    const double lg = std::lgamma(2.0 * (ell - n) + 1.0) + std::lgamma(2.0 * n + 1.0) -
                      ell * std::log(4.0) - 2.0 * std::lgamma(n + 1.0) - 2.0 * std::lgamma(ell - n + 1.0);
    c[n] = std::exp(lg);
  }
  return c;
}

Eigen::VectorXd displaced_fock_weights(int ell_max) {
  if (ell_max < 0) throw std::invalid_argument("displaced_fock_weights: ell_max >= 0");
  std::vector<Eigen::VectorXd> c(ell_max + 1);
  for (int l = 0; l <= ell_max; ++l) c[l] = displaced_fock_coefficients(l);
  Eigen::VectorXd b(ell_max + 1);
  for (int l = ell_max; l >= 0; --l) {
    double acc = 1.0;
    for (int p = l + 1; p <= ell_max; ++p) acc -= b[p] * c[p][l];
    b[l] = acc / c[l][l];
  }
  return b;
}

Matrix beam_splitter_unitary(int dim) {
  const long side = tensor_side(dim, 2);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix adag = a.adjoint();
  Matrix gen = kron(adag, a) - kron(a, adag);  // a^dag b - a b^dag
  Matrix h = Complex(0.0, -1.0) * (M_PI / 4.0) * gen;  // Hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(side);
  for (long i = 0; i < side; ++i) phases[i] = std::exp(Complex(0.0, es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double verify_displaced_fock_design(int ell_max, int dim) {
  if (dim < 4 * std::max(1, ell_max)) throw std::invalid_argument("verify_displaced_fock_design: D >= 4 ell_max");
  const Matrix u = beam_splitter_unitary(dim);
  const Eigen::VectorXd b = displaced_fock_weights(ell_max);
  Matrix acc = Matrix::Zero(dim, dim);
  for (int l = 0; l <= ell_max; ++l) {
    const long col = static_cast<long>(l) * dim + l;
    // Tr_1(U |ll><ll| U^dag) from the column U|ll>
    Matrix m2 = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Complex s = 0.0;
        for (int i = 0; i < dim; ++i)
          s += u(static_cast<long>(i) * dim + j, col) * std::conj(u(static_cast<long>(i) * dim + k, col));
        m2(j, k) = s;
      }
    acc += b[l] * m2;
  }
  double max_err = 0.0;
  for (int j = 0; j <= 2 * ell_max; ++j)
    for (int k = 0; k <= 2 * ell_max; ++k) {
      const double target = (j == k && j % 2 == 0) ? 1.0 : 0.0;
      max_err = std::max(max_err, std::abs(acc(j, k) - target));
    }
  return max_err;
}

}  // namespace cvd
