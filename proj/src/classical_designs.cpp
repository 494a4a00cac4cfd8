#include "cvdesigns/classical_designs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace cvd {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod can return exactly 2pi after the correction when a is a tiny
  // negative number.
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

}  // namespace

double WeightedPointSet::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void WeightedPointSet::validate() const {
  const size_t n = weights.size();
  if (kind == Kind::State) {
    if (state_points.size() != n) throw std::invalid_argument("WeightedPointSet: length mismatch");
  } else {
    if (points.size() != n) throw std::invalid_argument("WeightedPointSet: length mismatch");
  }
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("WeightedPointSet: weights must be positive");
  if (kind == Kind::Simplex) {
    for (const auto& p : points) {
      double s = 0.0;
      for (long i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12 || p[i] > 1.0 + 1e-12)
          throw std::invalid_argument("WeightedPointSet: simplex coordinate outside [0,1]");
        s += p[i];
      }
      if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("WeightedPointSet: simplex point does not sum to 1");
    }
  } else if (kind == Kind::Torus) {
    for (const auto& p : points)
      for (long i = 0; i < p.size(); ++i)
        if (p[i] < 0.0 || p[i] >= kTwoPi)
          throw std::invalid_argument("WeightedPointSet: torus angle outside [0,2pi)");
  }
}

double simplex_moment(const std::vector<int>& beta) {
  const int m = static_cast<int>(beta.size()) - 1;
  if (m < 1) throw std::invalid_argument("simplex_moment: need at least two coordinates");
  int total = 0;
  for (int b : beta) {
    if (b < 0) throw std::invalid_argument("simplex_moment: negative exponent");
    total += b;
  }
  // m! prod(beta_i!) / (m+|beta|)! evaluated as a product of ratios.
  double r = 1.0;
  for (int k = m + 1; k <= m + total; ++k) r /= static_cast<double>(k);
  for (int b : beta)
    for (int k = 2; k <= b; ++k) r *= static_cast<double>(k);
  return r;
}

WeightedPointSet simplex_extremal_centroid_2design(int m) {
  if (m < 1) throw std::invalid_argument("simplex_extremal_centroid_2design: m >= 1");
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Simplex;
  Eigen::VectorXd c = Eigen::VectorXd::Constant(m + 1, 1.0 / (m + 1));
  out.points.push_back(c);
  out.weights.push_back(static_cast<double>(m + 1) / (m + 2));
  for (int i = 0; i <= m; ++i) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(m + 1);
    f[i] = 1.0;
    out.points.push_back(f);
    out.weights.push_back(1.0 / ((m + 1.0) * (m + 2.0)));
  }
  return out;
}

WeightedPointSet simplex_hammer_stroud_2design(int m) {
  if (m < 1) throw std::invalid_argument("simplex_hammer_stroud_2design: m >= 1");
  const double r = 1.0 / std::sqrt(m + 2.0);
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Simplex;
  for (int i = 0; i <= m; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(m + 1, (1.0 - r) / (m + 1));
    v[i] += r;
    out.points.push_back(v);
    out.weights.push_back(1.0 / (m + 1.0));
  }
  return out;
}

WeightedPointSet simplex_extremal_1design(int m) {
  if (m < 1) throw std::invalid_argument("simplex_extremal_1design: m >= 1");
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Simplex;
  for (int i = 0; i <= m; ++i) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(m + 1);
    f[i] = 1.0;
    out.points.push_back(f);
    out.weights.push_back(1.0 / (m + 1.0));
  }
  return out;
}

WeightedPointSet simplex_centroid_1design(int m) {
  if (m < 1) throw std::invalid_argument("simplex_centroid_1design: m >= 1");
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Simplex;
  out.points.push_back(Eigen::VectorXd::Constant(m + 1, 1.0 / (m + 1)));
  out.weights.push_back(1.0);
  return out;
}

std::vector<std::vector<int>> multisets(int m, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(t, 0);
  while (true) {
    out.push_back(cur);
    int i = t - 1;
    while (i >= 0 && cur[i] == m - 1) --i;
    if (i < 0) break;
    const int v = cur[i] + 1;
    for (int j = i; j < t; ++j) cur[j] = v;
  }
  return out;
}

double verify_simplex_design(const WeightedPointSet& ens, int t) {
  if (ens.kind != WeightedPointSet::Kind::Simplex)
    throw std::invalid_argument("verify_simplex_design: simplex points required");
  ens.validate();
  const int m = static_cast<int>(ens.points.at(0).size()) - 1;
  double max_err = 0.0;
  for (const auto& a : multisets(m + 1, t)) {
    double avg = 0.0;
    for (size_t k = 0; k < ens.size(); ++k) {
      double prod = ens.weights[k];
      for (int idx : a) prod *= ens.points[k][idx];
      avg += prod;
    }
    std::vector<int> beta(m + 1, 0);
    for (int idx : a) ++beta[idx];
    max_err = std::max(max_err, std::abs(avg - simplex_moment(beta)));
  }
  return max_err;
}

WeightedPointSet torus_product_tdesign(int m, int t) {
  if (m < 1 || t < 1) throw std::invalid_argument("torus_product_tdesign: m, t >= 1");
  double count = std::pow(t + 1.0, m);
  if (count > 2e7) throw std::length_error("torus_product_tdesign: point count overflow");
  const long n = static_cast<long>(std::llround(count));
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Torus;
  std::vector<int> digits(m, 0);
  for (long i = 0; i < n; ++i) {
    Eigen::VectorXd p(m);
    for (int j = 0; j < m; ++j) p[j] = reduce_angle(kTwoPi * digits[j] / (t + 1));
    out.points.push_back(p);
    out.weights.push_back(1.0 / count);
    int j = m - 1;
    while (j >= 0 && ++digits[j] == t + 1) digits[j--] = 0;
  }
  return out;
}

int smallest_prime_above(int n) {
  auto is_prime = [](int v) {
    if (v < 2) return false;
    for (int q = 2; static_cast<long>(q) * q <= v; ++q)
      if (v % q == 0) return false;
    return true;
  };
  int p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

WeightedPointSet torus_prime_2design(int m) {
  if (m < 1) throw std::invalid_argument("torus_prime_2design: m >= 1");
  const int p = smallest_prime_above(std::max(2, m));
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Torus;
  for (int q1 = 0; q1 < p; ++q1)
    for (int q2 = 0; q2 < p; ++q2) {
      Eigen::VectorXd pt(m);
      for (int j = 0; j < m; ++j)
        pt[j] = reduce_angle(kTwoPi * ((static_cast<long>(j) * q1 + static_cast<long>(j) * j * q2) % p) / p);
      out.points.push_back(pt);
      out.weights.push_back(1.0 / (static_cast<double>(p) * p));
    }
  return out;
}

WeightedPointSet torus_cycle_1design(int m) {
  if (m < 1) throw std::invalid_argument("torus_cycle_1design: m >= 1");
  WeightedPointSet out;
  out.kind = WeightedPointSet::Kind::Torus;
  for (int q = 0; q < m; ++q) {
    Eigen::VectorXd pt(m);
    for (int j = 0; j < m; ++j) pt[j] = reduce_angle(kTwoPi * ((static_cast<long>(j) * q) % m) / m);
    out.points.push_back(pt);
    out.weights.push_back(1.0 / m);
  }
  return out;
}

double verify_torus_design(const WeightedPointSet& ens, int t) {
  if (ens.kind != WeightedPointSet::Kind::Torus)
    throw std::invalid_argument("verify_torus_design: torus points required");
  ens.validate();
  const int m = static_cast<int>(ens.points.at(0).size());
  double max_err = 0.0;
  const auto tuples = multisets(m, t);
  // The ensemble average is invariant under permuting the a tuple and the b
  // tuple separately, so multiset representatives suffice.
  for (const auto& a : tuples) {
    for (const auto& b : tuples) {
      std::complex<double> avg = 0.0;
      for (size_t k = 0; k < ens.size(); ++k) {
        double phase = 0.0;
        for (int i = 0; i < t; ++i) phase += ens.points[k][a[i]] - ens.points[k][b[i]];
        avg += ens.weights[k] * std::exp(std::complex<double>(0.0, phase));
      }
      const double exact = (a == b) ? 1.0 : 0.0;  // multisets are sorted
      max_err = std::max(max_err, std::abs(avg - exact));
    }
  }
  return max_err;
}

std::vector<std::array<int, 4>> diophantine_solutions(int range_max) {
  if (range_max < 1) throw std::invalid_argument("diophantine_solutions: range_max >= 1");
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a <= range_max; ++a)
    for (int b = 0; b <= range_max; ++b)
      for (int c = 0; c <= range_max; ++c)
        for (int d = 0; d <= range_max; ++d)
          if (a + b == c + d && a * a + b * b == c * c + d * d) out.push_back({a, b, c, d});
  return out;
}

bool diophantine_all_paired(const std::vector<std::array<int, 4>>& sols) {
  for (const auto& s : sols) {
    const bool paired = (s[0] == s[2] && s[1] == s[3]) || (s[0] == s[3] && s[1] == s[2]);
    if (!paired) return false;
  }
  return true;
}

bool torus_min_size_check(const WeightedPointSet& ens, int m) {
  return static_cast<long>(ens.size()) >= static_cast<long>(m) * (m - 1) + 1;
}

MubPhaseTable mub_phase_table(int n) {
  if (n < 2) throw std::invalid_argument("mub_phase_table: n >= 2");
  MubPhaseTable table(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  if (n == 2) {
    // Pauli X and Y eigenbases; the ax^2+bx table needs quarter phases here.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) table[i][j][k] = kTwoPi * (j * k / 2.0 + i * k * k / 4.0);
    return table;
  }
  if (smallest_prime_above(n - 1) != n)
    throw std::invalid_argument("mub_phase_table: n must be 2 or an odd prime");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        table[i][j][k] = kTwoPi * ((static_cast<long>(j) * k + static_cast<long>(i) * k * k) % n) / n;
  return table;
}

MubCheck check_mub_equivalence(const MubPhaseTable& thetas, int n, double tol) {
  if (static_cast<int>(thetas.size()) != n) throw std::invalid_argument("check_mub_equivalence: bad table");
  for (const auto& basis : thetas) {
    if (static_cast<int>(basis.size()) != n) throw std::invalid_argument("check_mub_equivalence: bad table");
    for (const auto& row : basis)
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("check_mub_equivalence: bad table");
  }
  MubCheck res;
  using C = std::complex<double>;
  double err1 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        C s = 0.0;
        for (int l = 0; l < n; ++l) s += std::exp(C(0.0, thetas[i][j][l] - thetas[i][k][l]));
        err1 = std::max(err1, std::abs(s / static_cast<double>(n) - (j == k ? 1.0 : 0.0)));
      }
  double err2 = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c; d < n; ++d) {
          C s = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              s += std::exp(C(0.0, thetas[i][j][a] + thetas[i][j][b] - thetas[i][j][c] - thetas[i][j][d]));
          const bool paired = (a == c && b == d) || (a == d && b == c);
          err2 = std::max(err2, std::abs(s / static_cast<double>(n) / static_cast<double>(n) - (paired ? 1.0 : 0.0)));
        }
  res.orthonormal_error = err1;
  res.design_error = err2;
  res.orthonormal = err1 <= tol;
  res.design_condition = err2 <= tol;
  return res;
}

}  // namespace cvd
