#include "cvdesigns/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvd {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
const double kFockBranchProb = 1.0 / (kTwoPi + 1.0);
const double kShadowScale = kTwoPi + 1.0;  // 2/alpha_2 under the sampling normalization
}  // namespace

Observable Observable::make_dense(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Observable: square matrix required");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("Observable: Hermitian matrix required");
  Observable o;
  o.form = Form::Dense;
  o.dense = std::move(m);
  return o;
}

Observable Observable::make_diagonal(Eigen::VectorXd d) {
  Observable o;
  o.form = Form::Diagonal;
  o.diag = std::move(d);
  return o;
}

Observable Observable::flip_pair(int a, int b) {
  if (a < 0 || b < 0 || a == b) throw std::invalid_argument("Observable: flip pair needs distinct indices");
  Observable o;
  o.form = Form::FlipPair;
  o.a = a;
  o.b = b;
  return o;
}

Observable Observable::flip_pair_plus_diag(int a, int b, int c) {
  Observable o = flip_pair(a, b);
  if (c < 0) throw std::invalid_argument("Observable: c >= 0");
  o.form = Form::FlipPairPlusDiag;
  o.c = c;
  return o;
}

Matrix Observable::to_matrix(int dim) const {
  Matrix m = Matrix::Zero(dim, dim);
  switch (form) {
    case Form::Dense:
      if (dense.rows() > dim) throw std::invalid_argument("Observable: dense form exceeds truncation");
      m.topLeftCorner(dense.rows(), dense.cols()) = dense;
      break;
    case Form::Diagonal:
      if (diag.size() > dim) throw std::invalid_argument("Observable: diagonal exceeds truncation");
      for (long i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
      break;
    case Form::FlipPairPlusDiag:
      if (c >= dim) throw std::invalid_argument("Observable: index beyond truncation");
      m(c, c) += 1.0;
      [[fallthrough]];
    case Form::FlipPair:
      if (a >= dim || b >= dim) throw std::invalid_argument("Observable: index beyond truncation");
      m(a, b) += 1.0;
      m(b, a) += 1.0;
      break;
  }
  return m;
}

double Observable::trace(int dim) const {
  switch (form) {
    case Form::Dense:
      return dense.trace().real();
    case Form::Diagonal:
      return diag.sum();
    case Form::FlipPair:
      return 0.0;
    case Form::FlipPairPlusDiag:
      return 1.0;
  }
  (void)dim;
  return 0.0;
}

ShadowPlan hoeffding_plan(int M, double delta, double epsilon, double c, double d) {
  if (M < 1 || !(delta > 0.0 && delta < 1.0) || !(epsilon > 0.0) || !(c < d))
    throw std::invalid_argument("hoeffding_plan: need M >= 1, 0 < delta < 1, eps > 0, c < d");
  ShadowPlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.c = c;
  plan.d = d;
  plan.N = static_cast<long>(std::ceil(std::log(2.0 * M / delta) * (d - c) * (d - c) / (2.0 * epsilon * epsilon)));
  plan.K = 1;
  return plan;
}

std::pair<double, double> flip_pair_estimator_range() {
  const double b = 2.0 + 1.0 / M_PI;
  return {-b, b};
}

std::pair<double, double> flip_pair_plus_diag_estimator_range() {
  return {-2.0 - 1.0 / M_PI + 1.0 / kTwoPi, kTwoPi};
}

ShadowSampler::ShadowSampler(ComplexOperator rho, double trace_tol, int cdf_grid)
    : rho_(std::move(rho)), cdf_grid_(cdf_grid) {
  if (rho_.copies != 1) throw std::invalid_argument("ShadowSampler: single-copy state required");
  if (!rho_.is_hermitian()) throw std::invalid_argument("ShadowSampler: Hermitian state required");
  const double tr = rho_.mat.trace().real();
  if (std::abs(tr - 1.0) > trace_tol)
    throw std::invalid_argument("ShadowSampler: trace defect exceeds tolerance");
  rho_.mat /= tr;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_.mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("ShadowSampler: state not positive semidefinite");
  diag_probs_ = rho_.mat.diagonal().real();
}

double ShadowSampler::theta_cdf(double theta, const std::vector<Complex>& modes) const {
  // CDF(theta) = [theta + 2 Re sum_k g_k (e^{i k theta} - 1)/(i k)] / 2 pi
  double acc = theta;
  for (size_t k = 1; k < modes.size(); ++k) {
    const Complex g = modes[k];
    if (g == Complex(0.0, 0.0)) continue;
    const Complex num = std::exp(Complex(0.0, k * theta)) - 1.0;
    acc += 2.0 * (g * num / Complex(0.0, static_cast<double>(k))).real();
  }
  return acc / kTwoPi;
}

ShadowRecord ShadowSampler::sample(StreamRng& rng) const {
  ShadowRecord rec;
  if (rng.uniform() <= kFockBranchProb) {
    rec.branch = ShadowRecord::Branch::Fock;
    double u = rng.uniform();
    int n = 0;
    const int d = rho_.space.dim;
    while (n < d - 1 && u > diag_probs_[n]) u -= diag_probs_[n], ++n;
    rec.n = n;
    return rec;
  }
  rec.branch = ShadowRecord::Branch::Phase;
  rec.phi = rng.uniform(0.0, kTwoPi);
  // Fourier modes of the conditional density <theta|rho|theta>_phi:
  // g_k = sum_{m-n=k} rho_{nm} e^{i phi (m^2-n^2)}
  const int d = rho_.space.dim;
  std::vector<Complex> modes(d, Complex(0.0, 0.0));
  for (int n = 0; n < d; ++n)
    for (int m = n + 1; m < d; ++m) {
      const double sq = static_cast<double>(m) * m - static_cast<double>(n) * n;
      modes[m - n] += rho_.mat(n, m) * std::exp(Complex(0.0, rec.phi * sq));
    }
  const double u = rng.uniform();
  double lo = 0.0, hi = kTwoPi;
  // bisect to the documented grid resolution, then interpolate
  const double tol = kTwoPi / cdf_grid_;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (theta_cdf(mid, modes) < u)
      lo = mid;
    else
      hi = mid;
  }
  const double flo = theta_cdf(lo, modes), fhi = theta_cdf(hi, modes);
  rec.theta = (fhi > flo) ? lo + (u - flo) / (fhi - flo) * (hi - lo) : 0.5 * (lo + hi);
  if (rec.theta >= kTwoPi) rec.theta -= kTwoPi;
  return rec;
}

namespace {

Complex phase_overlap(const ShadowRecord& rec, int n, int m) {
  // <theta|n><m|theta> summed into Tr: e^{i theta (m-n) + i phi (m^2-n^2)} / 2pi
  const double arg = rec.theta * (m - n) + rec.phi * (static_cast<double>(m) * m - static_cast<double>(n) * n);
  return std::exp(Complex(0.0, arg)) / kTwoPi;
}

}  // namespace

double shadow_expectation(const ShadowRecord& rec, const Observable& obs, int dim) {
  const double tr_o = obs.trace(dim);
  if (rec.branch == ShadowRecord::Branch::Fock) {
    double onn = 0.0;
    switch (obs.form) {
      case Observable::Form::Dense:
        onn = rec.n < obs.dense.rows() ? obs.dense(rec.n, rec.n).real() : 0.0;
        break;
      case Observable::Form::Diagonal:
        onn = rec.n < obs.diag.size() ? obs.diag[rec.n] : 0.0;
        break;
      case Observable::Form::FlipPair:
        onn = 0.0;
        break;
      case Observable::Form::FlipPairPlusDiag:
        onn = rec.n == obs.c ? 1.0 : 0.0;
        break;
    }
    return kShadowScale * onn - tr_o;
  }
  // phase branch closed forms
  switch (obs.form) {
    case Observable::Form::FlipPair:
    case Observable::Form::FlipPairPlusDiag: {
      const double da = obs.a, db = obs.b;
      const double arg = rec.theta * (da - db) + rec.phi * (da * da - db * db);
      double val = (2.0 + 1.0 / M_PI) * std::cos(arg);
      if (obs.form == Observable::Form::FlipPairPlusDiag) val += 1.0 / kTwoPi;  // (2pi+1)/2pi - Tr O
      return val;
    }
    case Observable::Form::Diagonal: {
      // <theta|O|theta> = Tr O / 2pi for diagonal O
      return kShadowScale * obs.diag.sum() / kTwoPi - tr_o;
    }
    case Observable::Form::Dense: {
      Complex acc = 0.0;
      for (long n = 0; n < obs.dense.rows(); ++n)
        for (long m = 0; m < obs.dense.cols(); ++m)
          acc += obs.dense(n, m) * phase_overlap(rec, static_cast<int>(n), static_cast<int>(m));
      if (std::abs(acc.imag()) > 1e-10)
        throw std::runtime_error("shadow_expectation: non-negligible imaginary residue");
      return kShadowScale * acc.real() - tr_o;
    }
  }
  throw std::logic_error("shadow_expectation: unreachable");
}

Matrix shadow_matrix(const ShadowRecord& rec, int dim) {
  Matrix m = -Matrix::Identity(dim, dim);
  if (rec.branch == ShadowRecord::Branch::Fock) {
    if (rec.n < dim) m(rec.n, rec.n) += kShadowScale;
    return m;
  }
  Vector chi(dim);
  for (int n = 0; n < dim; ++n) {
    const double arg = rec.theta * n + rec.phi * static_cast<double>(n) * n;
    chi[n] = std::exp(Complex(0.0, arg)) / std::sqrt(kTwoPi);
  }
  m += kShadowScale * (chi * chi.adjoint());
  return m;
}

double median_of_means(const std::vector<std::vector<ShadowRecord>>& groups, const Observable& obs,
                       int dim) {
  if (groups.empty()) throw std::invalid_argument("median_of_means: no groups");
  std::vector<double> means;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("median_of_means: empty group");
    double s = 0.0;
    for (const auto& rec : g) s += shadow_expectation(rec, obs, dim);
    means.push_back(s / static_cast<double>(g.size()));
  }
  std::sort(means.begin(), means.end());
  const size_t k = means.size();
  return (k % 2 == 1) ? means[k / 2] : 0.5 * (means[k / 2 - 1] + means[k / 2]);
}

double shadow_third_moment(const ComplexOperator& rho, const Observable& obs) {
  const int d = rho.space.dim;
  const Matrix o = obs.to_matrix(d);
  // Fock piece
  double fock = 0.0;
  for (int n = 0; n < d; ++n) fock += o(n, n).real() * o(n, n).real() * rho.mat(n, n).real();
  // Diophantine triple sum
  Complex triple = 0.0;
  for (int n1 = 0; n1 < d; ++n1)
    for (int m1 = 0; m1 < d; ++m1) {
      if (o(n1, m1) == Complex(0.0, 0.0)) continue;
      for (int n2 = 0; n2 < d; ++n2)
        for (int m2 = 0; m2 < d; ++m2) {
          if (o(n2, m2) == Complex(0.0, 0.0)) continue;
          for (int n3 = 0; n3 < d; ++n3)
            for (int m3 = 0; m3 < d; ++m3) {
              if (n1 + n2 + n3 != m1 + m2 + m3) continue;
              const long nsq = static_cast<long>(n1) * n1 + static_cast<long>(n2) * n2 +
                               static_cast<long>(n3) * n3;
              const long msq = static_cast<long>(m1) * m1 + static_cast<long>(m2) * m2 +
                               static_cast<long>(m3) * m3;
              if (nsq != msq) continue;
              triple += o(n1, m1) * o(n2, m2) * rho.mat(n3, m3);
            }
        }
    }
  return (fock + triple.real() / kTwoPi) / (kTwoPi + 1.0);
}

VarianceCheck empirical_variance_check(const ComplexOperator& rho, const Observable& obs, long N,
                                       std::uint64_t seed) {
  ShadowSampler sampler(rho);
  StreamRng rng(seed);
  const int d = rho.space.dim;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  std::vector<double> vals;
  vals.reserve(N);
  for (long i = 0; i < N; ++i) {
    const double v = shadow_expectation(sampler.sample(rng), obs, d);
    vals.push_back(v);
    s1 += v;
  }
  const double mean = s1 / static_cast<double>(N);
  for (double v : vals) {
    const double c = v - mean;
    s2 += c * c;
    s4 += c * c * c * c;
  }
  VarianceCheck out;
  out.empirical = s2 / static_cast<double>(N - 1);
  const double m2 = s2 / static_cast<double>(N);
  const double m4 = s4 / static_cast<double>(N);
  out.empirical_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(N));
  const Matrix o = obs.to_matrix(d);
  const double tr_o = o.trace().real();
  const double expect = (rho.mat * o).trace().real();
  const double t3 = shadow_third_moment(rho, obs);
  out.analytic = kShadowScale * kShadowScale * t3 - (tr_o + expect) * (tr_o + expect);
  return out;
}

}  // namespace cvd
