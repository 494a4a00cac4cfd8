#include "cvdesigns/fidelity.hpp"

#include <cmath>
#include <stdexcept>

#include "cvdesigns/cp_designs.hpp"
#include "cvdesigns/rng.hpp"

namespace cvd {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double stripe_entry(double kappa, int m, int i) {
  // sqrt(C(m+i, i)) (1-kappa^2)^{i/2} kappa^m, evaluated in log space; the
  // value never exceeds 1 on [0,1].
  if (kappa <= 0.0) return (m == 0) ? std::pow(1.0 - kappa * kappa, 0.5 * i) : 0.0;
  if (kappa >= 1.0) return (i == 0) ? 1.0 : 0.0;
  const double log_binom_half =
      0.5 * (std::lgamma(m + i + 1.0) - std::lgamma(i + 1.0) - std::lgamma(m + 1.0));
  return std::exp(log_binom_half + 0.5 * i * std::log1p(-kappa * kappa) + m * std::log(kappa));
}

}  // namespace

KrausChannel loss_kraus(double kappa, int dim, int i_max) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("loss_kraus: kappa in [0,1]");
  if (i_max > dim) throw std::invalid_argument("loss_kraus: i_max <= dim");
  KrausChannel ch{TruncatedSpace(dim), {}};
  for (int i = 0; i < i_max; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    for (int m = 0; m + i < dim; ++m) k(m, m + i) = stripe_entry(kappa, m, i);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

LossStripes loss_stripes(double kappa, int dim, int i_max) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("loss_stripes: kappa in [0,1]");
  if (i_max > dim) throw std::invalid_argument("loss_stripes: i_max <= dim");
  LossStripes ch;
  ch.kappa = kappa;
  ch.dim = dim;
  ch.i_max = i_max;
  for (int i = 0; i < i_max; ++i) {
    Eigen::VectorXd s(dim - i);
    for (int m = 0; m + i < dim; ++m) s[m] = stripe_entry(kappa, m, i);
    ch.stripe.push_back(std::move(s));
  }
  return ch;
}

Vector tmsv_state(const Regularizer& reg, int dim) {
  Vector v = Vector::Zero(static_cast<long>(dim) * dim);
  double norm2 = 0.0;
  for (int n = 0; n < dim; ++n) norm2 += reg.entry(n);
  if (!(norm2 > 0.0)) throw std::invalid_argument("tmsv_state: zero regularizer");
  for (int n = 0; n < dim; ++n) v[static_cast<long>(n) * dim + n] = std::sqrt(reg.entry(n) / norm2);
  return v;
}

ComplexOperator thermal_state(const Regularizer& reg) {
  const int d = reg.space.dim;
  Eigen::VectorXd r = reg.diagonal_vector();
  const double tr = r.sum();
  if (!(tr > 0.0)) throw std::invalid_argument("thermal_state: zero regularizer");
  Matrix m = (r / tr).cast<Complex>().asDiagonal();
  (void)d;
  return ComplexOperator(reg.space, 1, std::move(m));
}

double tmsv_squeezing(double beta) {
  return std::log((1.0 + std::exp(-beta / 2.0)) / std::sqrt(1.0 - std::exp(-beta)));
}

double effective_dimension(const Regularizer& reg) {
  const double t1 = reg.trace_power(1);
  if (!(t1 > 0.0)) throw std::invalid_argument("effective_dimension: zero regularizer");
  return t1 * t1 / reg.trace_power(2);
}

double entanglement_fidelity(const KrausChannel& ch, const Regularizer& reg) {
  const ComplexOperator rho = thermal_state(reg);
  double f = 0.0;
  for (const auto& k : ch.kraus) f += std::norm((rho.mat * k).trace());
  return f;
}

double entanglement_fidelity(const LossStripes& ch, const Regularizer& reg) {
  Eigen::VectorXd r = reg.diagonal_vector();
  if (static_cast<int>(r.size()) != ch.dim)
    throw std::invalid_argument("entanglement_fidelity: dimension mismatch");
  const double tr = r.sum();
  double f = 0.0;
  for (int i = 0; i < ch.i_max; ++i) {
    // Tr(rho_R K_i): rho_R is diagonal, K_i lives on the i-th upper stripe
    double acc = 0.0;
    if (i == 0)
      for (int m = 0; m < ch.dim; ++m) acc += r[m] / tr * ch.stripe[0][m];
    f += acc * acc;
  }
  return f;
}

double entanglement_fidelity_two_mode(const LossStripes& ch, const Regularizer& reg) {
  // <phi_R|(I ox K_i)|phi_R> with |phi_R> = sum_n lambda_n |nn>
  const int D = ch.dim;
  Eigen::VectorXd r = reg.diagonal_vector();
  const double tr = r.sum();
  Eigen::VectorXd lambda(D);
  for (int n = 0; n < D; ++n) lambda[n] = std::sqrt(r[n] / tr);
  double f = 0.0;
  for (int i = 0; i < ch.i_max; ++i) {
    double acc = 0.0;
    for (int n = i; n < D; ++n) {
      const double out_amp = lambda[n] * ch.stripe[i][n - i];  // amplitude on |n, n-i>
      if (n - i == n) acc += lambda[n] * out_amp;              // <nn| component
    }
    f += acc * acc;
  }
  return f;
}

double channel_overlap(const LossStripes& ch, const Regularizer& reg) {
  Eigen::VectorXd r = reg.diagonal_vector();
  const double tr = r.sum();
  double acc = 0.0;
  for (int i = 0; i < ch.i_max; ++i)
    for (int m = 0; m + i < ch.dim; ++m)
      acc += ch.stripe[i][m] * ch.stripe[i][m] * (r[m + i] / tr) * (r[m] / tr);
  return acc;
}

double loss_fe_soft(double nbar, double kappa) {
  const double v = 1.0 + nbar * (1.0 - kappa);
  return 1.0 / (v * v);
}

double loss_fe_hard(int d, double kappa) {
  double geom = 0.0;  // (1 - kappa^d)/(1 - kappa), stable at kappa = 1
  double p = 1.0;
  for (int j = 0; j < d; ++j) {
    geom += p;
    p *= kappa;
  }
  return geom * geom / (static_cast<double>(d) * d);
}

double loss_f1_soft(double nbar, double kappa) {
  const double dr = 2.0 * nbar + 1.0;
  return (dr * loss_fe_soft(nbar, kappa) + 1.0) / (dr + 1.0);
}

double loss_f2_soft_halfbeta(double nbar, double kappa) {
  const double a = (1.0 - kappa) * nbar + 1.0;
  const double b = (kappa * kappa + 1.0) * nbar + 1.0;
  return (2.0 * nbar + 1.0) * ((1.0 - kappa) * (1.0 - kappa) * nbar + 2.0) / (2.0 * a * a * b);
}

double loss_f12_hard(double nbar, double kappa) {
  const int d = static_cast<int>(std::floor(nbar)) + 1;
  return loss_fe_hard(d, kappa) * d / (d + 1.0) + 1.0 / (d + 1.0);
}

double coherent_fidelity(double nbar, double kappa) {
  return 1.0 / (1.0 + nbar * (1.0 - kappa) * (1.0 - kappa));
}

namespace {

// Exact expectation of sum_K |<psi| X K |psi>|^2 over the soft-regularized
// Kerred ensemble, with X = I (F2) or X = R^+ (F1).  The (theta, phi)
// continuum collapses to Kronecker deltas: for stripe index i >= 1 only
// identical index pairs survive, for i = 0 the diagonal sums decouple.
double kerred_design_expectation(const LossStripes& ch, double beta, bool moore_penrose) {
  const int D = ch.dim;
  const double x = std::exp(-2.0 * beta);
  const double y = std::exp(-beta);
  // fock weights w_n = (1-x)^2 (1+x) x^{2n} / 2, phase density f = cosh(b)/(e^b (2pi)^2)
  const double f_total = 0.5 * (1.0 + x);          // f (2pi)^2
  const double amp = f_total * (1.0 - x) * (1.0 - x);
  double fock = 0.0, phase_diag = 0.0, phase_off = 0.0;
  double diag_sum = 0.0;
  for (int n = 0; n < D; ++n) {
    const double w_n = 0.5 * (1.0 - x) * (1.0 - x) * (1.0 + x) * std::pow(x, n) * std::pow(x, n);
    const double knn = ch.stripe[0][n];
    const double fock_amp = moore_penrose ? std::exp(2.0 * beta * n) : 1.0;
    fock += w_n * fock_amp * knn * knn;
    diag_sum += knn * (moore_penrose ? std::pow(y, n) : std::pow(x, n));
  }
  phase_diag = amp * diag_sum * diag_sum;
  for (int i = 1; i < ch.i_max; ++i)
    for (int m = 0; m + i < D; ++m) {
      const double k2 = ch.stripe[i][m] * ch.stripe[i][m];
      // weight e^{-2 beta m'} with m' the ket index m+i for X = R^+, and
      // e^{-2 beta (m + m + i)} for X = I
      const double w = moore_penrose ? std::pow(x, m + i) : std::pow(x, 2 * m + i);
      phase_off += k2 * w;
    }
  phase_off *= amp;
  return fock + phase_diag + phase_off;
}

}  // namespace

double avg_fidelity_1(const LossStripes& ch, const Regularizer& reg, FidelityMethod method) {
  const double dr = effective_dimension(reg);
  if (method == FidelityMethod::Relation) {
    const double fe = entanglement_fidelity(ch, reg);
    // Tr[D(rho_{R^2}) R R^+]
    Eigen::VectorXd r = reg.diagonal_vector();
    Eigen::VectorXd r2 = r.cwiseProduct(r);
    const double tr2 = r2.sum();
    double leak = 0.0;
    for (int i = 0; i < ch.i_max; ++i)
      for (int m = 0; m + i < ch.dim; ++m)
        if (r[m] > 1e-14) leak += ch.stripe[i][m] * ch.stripe[i][m] * r2[m + i] / tr2;
    return (dr * fe + leak) / (dr + 1.0);
  }
  if (reg.kind == Regularizer::Kind::SoftEnergy) {
    const double t1 = reg.trace_power(1), t2 = reg.trace_power(2), t4 = reg.trace_power(4);
    const double n_r = (t4 + t2 * t2) / (t2 + t1 * t1);
    return n_r * kerred_design_expectation(ch, reg.beta, /*moore_penrose=*/true);
  }
  if (reg.kind == Regularizer::Kind::HardCutoff) return avg_fidelity_2(ch, reg, method);
  throw std::invalid_argument("avg_fidelity_1: no design path for custom regularizers");
}

double avg_fidelity_2(const LossStripes& ch, const Regularizer& reg, FidelityMethod method) {
  if (method == FidelityMethod::Relation) {
    // F2^(R) = d_S/(d_S+1) [Fe^(S) + Tr(D(rho_S) rho_S)] with S = R^2
    Regularizer sq = reg;
    if (reg.kind == Regularizer::Kind::SoftEnergy)
      sq.beta = 2.0 * reg.beta;
    else if (reg.kind == Regularizer::Kind::CustomDiagonal)
      sq.custom = reg.custom.cwiseProduct(reg.custom);
    const double ds = effective_dimension(sq);
    return ds / (ds + 1.0) * (entanglement_fidelity(ch, sq) + channel_overlap(ch, sq));
  }
  if (reg.kind == Regularizer::Kind::SoftEnergy)
    return kerred_design_expectation(ch, reg.beta, /*moore_penrose=*/false);
  if (reg.kind == Regularizer::Kind::HardCutoff) {
    // finite-dimensional 2-design expectation over Construction 1
    const CPDesign design = construction1_mub_design(reg.cutoff);
    double acc = 0.0;
    for (size_t s = 0; s < design.size(); ++s) {
      const Vector& psi = design.states[s];
      double val = 0.0;
      for (int i = 0; i < std::min(ch.i_max, reg.cutoff); ++i) {
        Complex ov = 0.0;
        for (int n = 0; n + i < reg.cutoff; ++n)
          ov += std::conj(psi[n]) * ch.stripe[i][n] * psi[n + i];
        val += std::norm(ov);
      }
      acc += design.weights[s] * val;
    }
    return acc;
  }
  throw std::invalid_argument("avg_fidelity_2: no design path for custom regularizers");
}

double coherent_fidelity_mc(double nbar, double kappa, int dim, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("coherent_fidelity_mc: samples >= 1");
  const LossStripes ch = loss_stripes(kappa, dim, dim);
  StreamRng rng(seed);
  double acc = 0.0;
  Vector v(dim);
  for (long s = 0; s < samples; ++s) {
    // stratified radial coordinate: |alpha|^2 = nbar X with X ~ Exp(1)
    const double u = (static_cast<double>(s) + rng.uniform()) / static_cast<double>(samples);
    const double xe = -std::log1p(-std::min(u, 1.0 - 1e-16));
    const double r = std::sqrt(nbar * xe);
    const Complex alpha = r * std::exp(Complex(0.0, rng.uniform(0.0, kTwoPi)));
    v[0] = 1.0;
    for (int n = 1; n < dim; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    v /= v.norm();  // truncated coherent state
    double fid = 0.0;
    for (int i = 0; i < dim; ++i) {
      Complex ov = 0.0;
      for (int m = 0; m + i < dim; ++m) ov += std::conj(v[m]) * ch.stripe[i][m] * v[m + i];
      fid += std::norm(ov);
    }
    acc += fid;
  }
  return acc / static_cast<double>(samples);
}

MomentIdentityReport moment_identities_check(double beta, int dim, const Matrix& a, const Matrix& b) {
  if (a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim)
    throw std::invalid_argument("moment_identities_check: dimension mismatch");
  const RegularizedEnsemble ens = regularized_kerred_design(beta, dim);
  const double x = std::exp(-2.0 * beta);

  // left sides assembled from the ensemble atoms and grid
  Matrix lhs_op = Matrix::Zero(dim, dim);
  Complex lhs_s = 0.0;
  for (int n = 0; n < dim; ++n) {
    lhs_op(n, n) += ens.fock_weights[n] * a(n, n);
    lhs_s += ens.fock_weights[n] * a(n, n) * b(n, n);
  }
  const double dtheta = kTwoPi / ens.grid_theta;
  const double dphi = kTwoPi / ens.grid_phi;
  const double w_grid = ens.phase_density * dtheta * dphi;
  Vector psi(dim);
  const double amp0 = std::sqrt(1.0 - x);
  for (int kt = 0; kt < ens.grid_theta; ++kt) {
    const double theta = kt * dtheta;
    for (int kp = 0; kp < ens.grid_phi; ++kp) {
      const double phi = kp * dphi;
      for (int n = 0; n < dim; ++n) {
        const double arg = theta * n + phi * static_cast<double>(n) * n;
        psi[n] = amp0 * std::exp(-beta * n) * std::exp(Complex(0.0, arg));
      }
      const Vector apsi = a * psi;
      const Complex ea = psi.dot(apsi);
      const Complex eb = psi.dot(b * psi);
      lhs_op.noalias() += (w_grid * ea) * (psi * psi.adjoint());
      lhs_s += w_grid * ea * eb;
    }
  }

  // right sides from the second-moment identities
  const double tr2 = 1.0 / (1.0 - x);
  const double tr4 = 1.0 / (1.0 - x * x);
  const double denom = tr2 * tr2 + tr4;  // 2 Tr Pi_2^(R)
  Eigen::VectorXd xpow(dim);
  for (int n = 0; n < dim; ++n) xpow[n] = std::pow(x, n);
  Complex t_a = 0.0, t_b = 0.0;
  for (int n = 0; n < dim; ++n) {
    t_a += a(n, n) * xpow[n];  // Tr(R A R) on the truncation
    t_b += b(n, n) * xpow[n];
  }
  Matrix rhs_op(dim, dim);
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q)
      rhs_op(p, q) = (xpow[p] * t_a * (p == q ? 1.0 : 0.0) + xpow[p] * a(p, q) * xpow[q]) / denom;
  Complex rhs_s = t_a * t_b;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) rhs_s += a(m, n) * b(n, m) * xpow[n] * xpow[m];
  rhs_s /= denom;

  MomentIdentityReport rep;
  rep.operator_deviation = max_abs_diff(lhs_op, rhs_op);
  rep.scalar_deviation = std::abs(lhs_s - rhs_s);
  return rep;
}

std::vector<FidelityReport> loss_curve(double nbar, const std::vector<double>& kappas, int dim,
                                       int i_max, long mc_samples, std::uint64_t seed) {
  if (!(nbar > 0.0)) throw std::invalid_argument("loss_curve: nbar > 0");
  const double beta = std::log(1.0 + 1.0 / nbar);
  const int d_hard = static_cast<int>(std::floor(nbar)) + 1;
  const TruncatedSpace space(dim);
  const Regularizer soft = Regularizer::soft(beta, space);
  const Regularizer soft_half = Regularizer::soft(beta / 2.0, space);
  const Regularizer hard = Regularizer::hard(d_hard, space);
  const int coh_dim = std::max(16, static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar))));

  std::vector<FidelityReport> out;
  for (double kappa : kappas) {
    const LossStripes ch = loss_stripes(kappa, dim, i_max);
    FidelityReport r;
    r.kappa = kappa;
    r.nbar = nbar;
    r.fe_soft = loss_fe_soft(nbar, kappa);
    r.fe_soft_numeric = entanglement_fidelity(ch, soft);
    r.fe_hard = loss_fe_hard(d_hard, kappa);
    r.fe_hard_numeric = entanglement_fidelity(ch, hard);
    r.f1_soft = loss_f1_soft(nbar, kappa);
    r.f1_soft_numeric = avg_fidelity_1(ch, soft, FidelityMethod::DesignExpectation);
    r.f2_soft_halfbeta = loss_f2_soft_halfbeta(nbar, kappa);
    r.f2_soft_halfbeta_numeric = avg_fidelity_2(ch, soft_half, FidelityMethod::DesignExpectation);
    r.f12_hard = loss_f12_hard(nbar, kappa);
    r.f12_hard_numeric = avg_fidelity_2(ch, hard, FidelityMethod::DesignExpectation);
    r.f_coh = coherent_fidelity(nbar, kappa);
    r.f_coh_numeric = coherent_fidelity_mc(nbar, kappa, coh_dim, mc_samples, seed);
    r.truncation_tail = std::exp(-beta * dim);
    out.push_back(r);
  }
  return out;
}

}  // namespace cvd
