#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvdesigns/rigged.hpp"

using namespace cvd;

TEST_CASE("rigged coefficients") {
  SUBCASE("phase state at zero angles is flat") {
    RiggedStateSpec spec;
    spec.family = RiggedFamily::KerredPhase;
    for (int n : {0, 1, 5}) {
      const Complex c = rigged_coefficient(spec, n);
      CHECK(c.real() == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
      CHECK(c.imag() == doctest::Approx(0.0));
    }
  }
  SUBCASE("cos state vanishes at sine zeros") {
    RiggedStateSpec spec;
    spec.family = RiggedFamily::Cos;
    spec.theta = M_PI / 2.0;
    spec.phi = 0.7;
    CHECK(std::abs(rigged_coefficient(spec, 1)) < 1e-15);
  }
  SUBCASE("gamma = pi reproduces the sin family up to a constant") {
    RiggedStateSpec rot;
    rot.family = RiggedFamily::Rotated;
    rot.gamma = M_PI;
    rot.theta = 0.41;
    rot.phi = -0.9;
    RiggedStateSpec sin_spec = rot;
    sin_spec.family = RiggedFamily::Sin;
    const Complex ratio0 = rigged_coefficient(rot, 0) / rigged_coefficient(sin_spec, 0);
    for (int n : {1, 2, 7}) {
      const Complex ratio = rigged_coefficient(rot, n) / rigged_coefficient(sin_spec, n);
      CHECK(std::abs(ratio - ratio0) < 1e-12);
    }
    CHECK(std::abs(ratio0) == doctest::Approx(std::sqrt(2.0 * M_PI / 8.0)));
  }
  SUBCASE("gamma = 0 reproduces the cos family up to a constant") {
    RiggedStateSpec rot;
    rot.family = RiggedFamily::Rotated;
    rot.gamma = 0.0;
    rot.theta = 1.13;
    rot.phi = 0.3;
    RiggedStateSpec cos_spec = rot;
    cos_spec.family = RiggedFamily::Cos;
    const Complex ratio0 = rigged_coefficient(rot, 0) / rigged_coefficient(cos_spec, 0);
    for (int n : {1, 3}) {
      const Complex ratio = rigged_coefficient(rot, n) / rigged_coefficient(cos_spec, n);
      CHECK(std::abs(ratio - ratio0) < 1e-12);
    }
  }
  SUBCASE("sign flip conjugates the phase state") {
    RiggedStateSpec plus;
    plus.theta = 0.3;
    plus.phi = 1.1;
    RiggedStateSpec minus = plus;
    minus.sign = PhaseSign::Minus;
    for (int n : {0, 1, 4})
      CHECK(std::abs(rigged_coefficient(minus, n) - std::conj(rigged_coefficient(plus, n))) < 1e-15);
  }
}

TEST_CASE("exact two-copy elements") {
  CHECK(rigged2_exact_element(RiggedFamily::KerredPhase, 0, 1, 0, 1) == doctest::Approx(1.0));
  CHECK(rigged2_exact_element(RiggedFamily::KerredPhase, 0, 0, 0, 0) == doctest::Approx(1.0));
  CHECK(rigged2_exact_element(RiggedFamily::KerredPhase, 0, 3, 1, 2) == doctest::Approx(0.0));
  CHECK(rigged2_exact_element(RiggedFamily::Cos, 0, 0, 0, 0) == doctest::Approx(3.0));
  CHECK(rigged2_exact_element(RiggedFamily::Sin, 0, 1, 1, 0) == doctest::Approx(2.0));
}

TEST_CASE("quadrature agrees with the exact elements") {
  const int grid = rigged_default_grid(8);
  SUBCASE("spot values") {
    CHECK(std::abs(rigged2_quadrature_element(RiggedFamily::KerredPhase, 1, 2, 2, 1, grid) -
                   Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(rigged2_quadrature_element(RiggedFamily::Cos, 0, 0, 0, 0, grid) -
                   Complex(3.0, 0.0)) < 1e-10);
    CHECK(std::abs(rigged2_quadrature_element(RiggedFamily::Sin, 0, 1, 1, 0, grid) -
                   Complex(2.0, 0.0)) < 1e-10);
  }
  SUBCASE("full sweep with indices <= 5") {
    for (auto family : {RiggedFamily::KerredPhase, RiggedFamily::Cos, RiggedFamily::Sin}) {
      double worst = 0.0;
      for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b)
          for (int c = 0; c <= 5; ++c)
            for (int d = 0; d <= 5; ++d) {
              const Complex q = rigged2_quadrature_element(family, a, b, c, d, rigged_default_grid(5));
              worst = std::max(worst, std::abs(q - rigged2_exact_element(family, a, b, c, d)));
            }
      CHECK(worst < 1e-10);
    }
  }
  SUBCASE("rotated family at generic gamma") {
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int c = 0; c <= 3; ++c)
          for (int d = 0; d <= 3; ++d) {
            const Complex q = rigged2_quadrature_element(RiggedFamily::Rotated, a, b, c, d, grid, 2.031);
            CHECK(std::abs(q - rigged2_exact_element(RiggedFamily::Rotated, a, b, c, d)) < 1e-10);
          }
  }
  SUBCASE("minus sign convention leaves the values unchanged") {
    for (int a = 0; a <= 3; ++a)
      for (int d = 0; d <= 3; ++d) {
        const Complex plus = rigged2_quadrature_element(RiggedFamily::KerredPhase, a, 2, 1, d, grid);
        const Complex minus = rigged2_quadrature_element(RiggedFamily::KerredPhase, a, 2, 1, d, grid,
                                                         M_PI, PhaseSign::Minus);
        CHECK(std::abs(plus - minus) < 1e-12);
      }
  }
  SUBCASE("coarse grids are rejected") {
    CHECK_THROWS_AS(rigged2_quadrature_element(RiggedFamily::KerredPhase, 8, 8, 8, 8, 16),
                    std::invalid_argument);
  }
}

TEST_CASE("no Diophantine solutions with a = b + c + d + 2") {
  // the claim behind the cos-family reduction, brute-forced
  for (int b = 0; b <= 50; ++b)
    for (int c = 0; c <= 50; ++c)
      for (int d = 0; d <= 50; ++d) {
        const long a = static_cast<long>(b) + c + d + 2;
        const long lhs = a * a + static_cast<long>(b) * b;
        const long rhs = static_cast<long>(c) * c + static_cast<long>(d) * d;
        CHECK(lhs != rhs);
      }
}

TEST_CASE("verify_rigged_design") {
  SUBCASE("appendix convention") {
    CHECK(verify_rigged_design(RiggedFamily::KerredPhase, 2, 8) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::Cos, 2, 6) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::Sin, 2, 6) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::Rotated, 2, 6) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::KerredPhase, 1, 8) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::Cos, 1, 8) < 1e-12);
  }
  SUBCASE("probability convention rescales alpha") {
    const auto id = rigged_design_id(RiggedFamily::KerredPhase, RiggedConvention::Probability);
    CHECK(id.alpha1 == doctest::Approx(1.0));
    CHECK(id.alpha2 == doctest::Approx(1.0 / (M_PI + 0.5)));
    CHECK(verify_rigged_design(RiggedFamily::KerredPhase, 2, 8, RiggedConvention::Probability) < 1e-12);
    CHECK(verify_rigged_design(RiggedFamily::KerredPhase, 1, 8, RiggedConvention::Probability) < 1e-12);
  }
  SUBCASE("appendix alphas") {
    const auto id = rigged_design_id(RiggedFamily::KerredPhase, RiggedConvention::Appendix);
    CHECK(id.alpha1 == doctest::Approx(M_PI + 0.5));
    CHECK(id.alpha2 == doctest::Approx(1.0));
    CHECK(id.fock_prefactor == doctest::Approx(0.5));
  }
}

TEST_CASE("assembled design operator is Hermitian PSD on the truncation") {
  // assemble pre_f sum (nn)^{ot 2} + pre_i * exact elements at D = 5; the
  // result is alpha_2 Pi_2, so eigenvalues must be nonnegative
  const int D = 5;
  const auto id = rigged_design_id(RiggedFamily::Cos, RiggedConvention::Appendix);
  Eigen::MatrixXcd m(D * D, D * D);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          double v = id.integral_prefactor * rigged2_exact_element(RiggedFamily::Cos, a, b, c, d);
          if (a == b && a == c && a == d) v += id.fock_prefactor;
          m(a * D + b, c * D + d) = v;
        }
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}
