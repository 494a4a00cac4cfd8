#include "cvdesigns/cp_designs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cvd {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

StateVector::StateVector(TruncatedSpace s, Vector a, bool require_normalized)
    : space(s), amps(std::move(a)) {
  if (amps.size() != space.dim) throw std::invalid_argument("StateVector: amplitude length mismatch");
  if (require_normalized && std::abs(amps.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("StateVector: not normalized");
}

void CPDesign::validate() const {
  if (states.size() != weights.size()) throw std::invalid_argument("CPDesign: length mismatch");
  double total = 0.0;
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != space.dim) throw std::invalid_argument("CPDesign: state dimension mismatch");
    if (std::abs(states[i].norm() - 1.0) > 1e-12) throw std::invalid_argument("CPDesign: state not normalized");
    if (!(weights[i] > 0.0)) throw std::invalid_argument("CPDesign: weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("CPDesign: weights must sum to 1");
}

bool same_ray(const Vector& a, const Vector& b, double tol) {
  return std::abs(a.dot(b)) > 1.0 - tol;  // Eigen's dot conjugates the first argument
}

namespace {

// Append (state, weight), merging into an existing entry equal as a ray.
void push_merged(CPDesign& design, const Vector& state, double weight) {
  for (size_t i = 0; i < design.states.size(); ++i) {
    if (same_ray(design.states[i], state)) {
      design.weights[i] += weight;
      return;
    }
  }
  design.states.push_back(state);
  design.weights.push_back(weight);
}

}  // namespace

CPDesign cp_from_simplex_torus(const WeightedPointSet& simplex, const WeightedPointSet& torus, int t) {
  if (simplex.kind != WeightedPointSet::Kind::Simplex || torus.kind != WeightedPointSet::Kind::Torus)
    throw std::invalid_argument("cp_from_simplex_torus: wrong point kinds");
  (void)t;
  simplex.validate();
  torus.validate();
  const int d = static_cast<int>(simplex.points.at(0).size());
  if (static_cast<int>(torus.points.at(0).size()) != d)
    throw std::invalid_argument("cp_from_simplex_torus: torus must carry d angle coordinates");
  CPDesign out{TruncatedSpace(d)};
  for (size_t a = 0; a < simplex.size(); ++a) {
    for (size_t b = 0; b < torus.size(); ++b) {
      Vector psi(d);
      for (int j = 0; j < d; ++j)
        psi[j] = std::sqrt(simplex.points[a][j]) * std::exp(Complex(0.0, torus.points[b][j]));
      psi.normalize();  // exact up to rounding; simplex coordinates sum to 1
      push_merged(out, psi, simplex.weights[a] * torus.weights[b]);
    }
  }
  return out;
}

CPDesign construction1_mub_design(int d) {
  if (d < 2) throw std::invalid_argument("construction1_mub_design: d >= 2");
  const int m = d - 1;
  const int p = smallest_prime_above(std::max(2, m));
  CPDesign out{TruncatedSpace(d)};
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1.0;
    out.states.push_back(e);
    out.weights.push_back(1.0 / ((m + 1.0) * (m + 2.0)));
  }
  const double wp = (m + 1.0) / ((m + 2.0) * p * p);
  for (int q1 = 0; q1 < p; ++q1)
    for (int q2 = 0; q2 < p; ++q2) {
      Vector psi(d);
      for (int j = 0; j < d; ++j) {
        const long ph = (static_cast<long>(q1) * j + static_cast<long>(q2) * j * j) % p;
        psi[j] = std::exp(Complex(0.0, kTwoPi * ph / p)) / std::sqrt(static_cast<double>(d));
      }
      out.states.push_back(psi);
      out.weights.push_back(wp);
    }
  return out;
}

CPDesign construction2_uniform_design(int d) {
  if (d < 2) throw std::invalid_argument("construction2_uniform_design: d >= 2");
  const int m = d - 1;
  const int p = smallest_prime_above(std::max(2, m));
  const double r = 1.0 / std::sqrt(m + 2.0);
  const double hi = std::sqrt((1.0 + r * m) / (m + 1.0));
  const double lo = std::sqrt((1.0 - r) / (m + 1.0));
  CPDesign out{TruncatedSpace(d)};
  const double w = 1.0 / (static_cast<double>(d) * p * p);
  for (int l = 0; l < d; ++l)
    for (int q1 = 0; q1 < p; ++q1)
      for (int q2 = 0; q2 < p; ++q2) {
        Vector psi(d);
        for (int j = 0; j < d; ++j) {
          const long ph = (static_cast<long>(q1) * j + static_cast<long>(q2) * j * j) % p;
          psi[j] = (j == l ? hi : lo) * std::exp(Complex(0.0, kTwoPi * ph / p));
        }
        psi.normalize();
        out.states.push_back(psi);
        out.weights.push_back(w);
      }
  return out;
}

double verify_cp_design(const CPDesign& design, int t) {
  design.validate();
  const int d = design.space.dim;
  const long side = tensor_side(d, t);
  Matrix avg = Matrix::Zero(side, side);
  for (size_t i = 0; i < design.size(); ++i) {
    const Vector big = kron_power(design.states[i], t);
    avg.noalias() += design.weights[i] * (big * big.adjoint());
  }
  const ComplexOperator pi = symmetric_projector(design.space, t);
  return spectral_diff(avg, pi.mat / pi.mat.trace().real());
}

WeightedPointSet born_project(const CPDesign& design, double merge_tol) {
  design.validate();
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Simplex;
  for (size_t i = 0; i < design.size(); ++i) {
    Eigen::VectorXd q = design.states[i].cwiseAbs2();
    bool merged = false;
    for (size_t k = 0; k < out.points.size(); ++k) {
      if ((out.points[k] - q).cwiseAbs().maxCoeff() <= merge_tol) {
        out.weights[k] += design.weights[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(q);
      out.weights.push_back(design.weights[i]);
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> constrained_extremal_points(int d, double N) {
  if (d < 2) throw std::invalid_argument("constrained_extremal_points: d >= 2");
  if (N < 0.0 || N > d - 1.0) throw std::domain_error("constrained_extremal_points: N outside [0, d-1]");
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i <= d - 2; ++i) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    if (i + 1 >= N) {
      b[0] = 1.0 - N / (i + 1.0);
      b[i + 1] += N / (i + 1.0);
    } else {
      const double s = (N - i - 1.0) / (d - i - 2.0);
      b[i + 1] = 1.0 - s;
      b[d - 1] += s;
    }
    out.push_back(b);
  }
  return out;
}

ComplexOperator constrained_first_moment(int d) {
  if (d < 2) throw std::invalid_argument("constrained_first_moment: d >= 2");
  Matrix m = Matrix::Zero(d, d);
  double harmonic = 0.0;
  for (int k = 1; k <= d - 1; ++k) harmonic += 1.0 / k;
  m(0, 0) = 1.0 - harmonic / (d - 1.0);
  for (int k = 1; k <= d - 1; ++k) m(k, k) = 1.0 / ((d - 1.0) * k);
  // already unit trace: (1 - H/(d-1)) + H/(d-1) = 1
  return ComplexOperator(TruncatedSpace(d), 1, std::move(m));
}

}  // namespace cvd
