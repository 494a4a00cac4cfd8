#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

namespace cvd {

// A finite weighted collection of design points.  Simplex points are
// probability vectors of length m+1; torus points are angle vectors of
// length m with entries reduced to [0, 2pi).
struct WeightedPointSet {
  enum class Kind { Simplex, Torus, State };

  Kind kind = Kind::Simplex;
  std::vector<Eigen::VectorXd> points;         // simplex or torus coordinates
  std::vector<Eigen::VectorXcd> state_points;  // used when kind == State
  std::vector<double> weights;

  size_t size() const { return weights.size(); }
  double total_weight() const;
  // Throws unless weights are positive, lengths match, and coordinates
  // satisfy the kind's invariants.
  void validate() const;
};

// Uniform-measure moment of the monomial prod_i p_i^{beta_i} over the
// m-simplex: m! (prod beta_i!) / (m + sum beta_i)!.
double simplex_moment(const std::vector<int>& beta);

// Extremal points f^(i) plus the centroid; weights (m+1)/(m+2) on the
// centroid and 1/((m+1)(m+2)) on each extremal point.  A 2-design.
WeightedPointSet simplex_extremal_centroid_2design(int m);

// m+1 equally weighted points v^(i) = r f^(i) + (1-r) c with r = 1/sqrt(m+2).
// A 2-design with the minimal point count.
WeightedPointSet simplex_hammer_stroud_2design(int m);

// Extremal points with uniform weights (a 1-design), and the bare centroid.
WeightedPointSet simplex_extremal_1design(int m);
WeightedPointSet simplex_centroid_1design(int m);

// Max over monomial tuples a in {0..m}^t of |ensemble average - moment|.
double verify_simplex_design(const WeightedPointSet& ens, int t);

// Grid design: (t+1)^m points with coordinates 2 pi d_j / (t+1).
WeightedPointSet torus_product_tdesign(int m, int t);

// p^2 points with coordinates theta_j = 2 pi (j q1 + j^2 q2) / p for
// j = 0..m-1, p the smallest prime > max(2, m); the first coordinate is
// always 0.  A 2-design of size p^2.
WeightedPointSet torus_prime_2design(int m);

// Cycle design: m points with coordinates 2 pi j q / m.  A 1-design.
WeightedPointSet torus_cycle_1design(int m);

int smallest_prime_above(int n);

// Max over index tuples a, b (coordinates 1..m, enumerated up to
// permutation symmetry) of |sum_S v e^{i sum(theta_a - theta_b)} - I[a ~ b]|
// where the exact integral is 1 iff a is a permutation of b.
double verify_torus_design(const WeightedPointSet& ens, int t);

// Brute-force solutions of a+b=c+d, a^2+b^2=c^2+d^2 over [0, range_max]^4.
// Every solution must pair up as {a,b} = {c,d}; returns the solutions.
std::vector<std::array<int, 4>> diophantine_solutions(int range_max);
bool diophantine_all_paired(const std::vector<std::array<int, 4>>& sols);

// |S| >= m(m-1)+1 for a verified torus 2-design.
bool torus_min_size_check(const WeightedPointSet& ens, int m);

// Phase table theta[i][j][k] of a candidate complete MUB set in C^n: basis i,
// state j within the basis, component k.  Our convention: the table lists the
// n bases beyond the computational one.
using MubPhaseTable = std::vector<std::vector<std::vector<double>>>;

// theta^i_{j,k} = 2 pi (j k + i k^2)/n for odd prime n; for n = 2 the
// Pauli X/Y table with quarter phases (2 pi (jk/2 + i k^2/4)).
MubPhaseTable mub_phase_table(int n);

struct MubCheck {
  bool orthonormal = false;      // (1/n) sum_l e^{i(th_jl - th_kl)} = delta_jk
  bool design_condition = false; // n^-2 quartic sum equals pairing indicator
  double orthonormal_error = 0.0;
  double design_error = 0.0;
};

MubCheck check_mub_equivalence(const MubPhaseTable& thetas, int n, double tol = 1e-10);

// Multisets of size t over {0..m-1} (verification sweeps enumerate index
// tuples up to permutation symmetry).
std::vector<std::vector<int>> multisets(int m, int t);

}  // namespace cvd
