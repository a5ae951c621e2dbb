#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "helpers.hpp"
#include "spinscale/polarization_map.hpp"

using namespace spinscale;

namespace {

ScalingTriple random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("ScalingTriple rejects non-finite components") {
  CHECK_THROWS_AS(ScalingTriple(1.0, std::numeric_limits<double>::infinity(), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ScalingTriple(std::nan(""), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("apply: unitality, eigen-action on J2, and a hand-evaluated qutrit case") {
  std::mt19937_64 rng(3);

  for (int tj : {1, 2, 3}) {
    const SpinLabel j(tj);
    const MapSpec map{j, random_triple(rng)};
    CHECK(frobenius_distance(apply(map, ComplexMatrix::identity(j.dim())),
                             ComplexMatrix::identity(j.dim())) < 1e-14);
  }

  const SpinLabel j1(2);
  const AngularMomentum am = build_angular_momentum(j1);
  const MapSpec map{j1, {0.3, -0.7, 0.9}};
  ComplexMatrix expected = am.j2;
  expected *= -0.7;
  CHECK(frobenius_distance(apply(map, am.j2), expected) < 1e-14);

  // X = |1,1><1,1| with lambda = (1/2, 1/2, 1/2) maps to diag(7/12, 1/3, 1/12).
  const MapSpec half{j1, {0.5, 0.5, 0.5}};
  const ComplexMatrix out = apply(half, basis_ket(j1, 2).outer());
  CHECK(out(0, 0).real() == Catch::Approx(7.0 / 12.0).margin(1e-14));
  CHECK(out(1, 1).real() == Catch::Approx(1.0 / 3.0).margin(1e-14));
  CHECK(out(2, 2).real() == Catch::Approx(1.0 / 12.0).margin(1e-14));
  CHECK(std::abs(out(0, 1)) < 1e-14);

  CHECK_THROWS_AS(apply(map, ComplexMatrix(4)), dimension_error);
}

TEST_CASE("apply preserves traces, is linear, and preserves Hermiticity") {
  std::mt19937_64 rng(5);
  for (int tj : {1, 2, 4}) {
    const SpinLabel j(tj);
    const MapSpec map{j, random_triple(rng)};
    const ComplexMatrix x = testutil::random_hermitian(j.dim(), rng);
    const ComplexMatrix y = testutil::random_hermitian(j.dim(), rng);

    CHECK(std::abs(apply(map, x).trace() - x.trace()) < 1e-12);
    CHECK(apply(map, x).is_hermitian(1e-12));

    ComplexMatrix combo = x * cdouble(0.7) + y * cdouble(-1.3);
    ComplexMatrix lhs = apply(map, combo);
    ComplexMatrix rhs = apply(map, x) * cdouble(0.7) + apply(map, y) * cdouble(-1.3);
    CHECK(frobenius_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("polarization extraction and the componentwise scaling law") {
  const SpinLabel j1(2);

  ComplexMatrix mixed = ComplexMatrix::identity(3);
  mixed *= 1.0 / 3.0;
  const PolarizationVector zero = polarization(mixed, j1);
  CHECK(zero.norm() < 1e-14);

  const PolarizationVector top = polarization(basis_ket(j1, 2).outer(), j1);
  CHECK(top.p1 == Catch::Approx(0.0).margin(1e-14));
  CHECK(top.p2 == Catch::Approx(0.0).margin(1e-14));
  CHECK(top.p3 == Catch::Approx(1.0).margin(1e-14));

  std::mt19937_64 rng(7);
  for (int tj : {1, 2, 3}) {
    const SpinLabel j(tj);
    const MapSpec map{j, random_triple(rng)};
    const ComplexMatrix rho = testutil::random_density(j.dim(), rng);
    const PolarizationVector before = polarization(rho, j);
    CHECK(before.norm() <= j.j() + 1e-9);
    const PolarizationVector after = polarization(apply(map, rho), j);
    CHECK(after.p1 == Catch::Approx(map.lambdas.lambda1 * before.p1).margin(1e-12));
    CHECK(after.p2 == Catch::Approx(map.lambdas.lambda2 * before.p2).margin(1e-12));
    CHECK(after.p3 == Catch::Approx(map.lambdas.lambda3 * before.p3).margin(1e-12));
  }
}

TEST_CASE("compose_self squares the triple and matches double application") {
  const MapSpec fixed{SpinLabel(2), {1.0, 1.0, 1.0}};
  const ScalingTriple f = compose_self(fixed).lambdas;
  CHECK(f.lambda1 == 1.0);
  CHECK(f.lambda2 == 1.0);
  CHECK(f.lambda3 == 1.0);

  const MapSpec m{SpinLabel(2), {0.9, -0.5, 0.0}};
  const ScalingTriple sq = compose_self(m).lambdas;
  CHECK(sq.lambda1 == Catch::Approx(0.81).margin(1e-15));
  CHECK(sq.lambda2 == Catch::Approx(0.25).margin(1e-15));
  CHECK(sq.lambda3 == 0.0);

  std::mt19937_64 rng(11);
  for (int tj : {1, 2, 3}) {
    const SpinLabel j(tj);
    const MapSpec map{j, random_triple(rng)};
    const ComplexMatrix x = testutil::random_hermitian(j.dim(), rng);
    CHECK(frobenius_distance(apply(compose_self(map), x), apply(map, apply(map, x))) < 1e-12);
  }
}

TEST_CASE("maps with different triples compose componentwise") {
  std::mt19937_64 rng(13);
  for (int tj : {1, 2}) {
    const SpinLabel j(tj);
    const int d = j.dim();
    const ScalingTriple a = random_triple(rng);
    const ScalingTriple b = random_triple(rng);
    const MapSpec ma{j, a};
    const MapSpec mb{j, b};
    const MapSpec mab{j, {a.lambda1 * b.lambda1, a.lambda2 * b.lambda2, a.lambda3 * b.lambda3}};
    // Checked on the full matrix-unit basis, which spans the operator space.
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        ComplexMatrix unit(d);
        unit(r, c) = 1.0;
        CHECK(frobenius_distance(apply(ma, apply(mb, unit)), apply(mab, unit)) < 1e-13);
      }
  }
}

TEST_CASE("closed-form minimal output eigenvalue") {
  SECTION("maximally mixed input gives 1/d") {
    for (int tj : {1, 2, 3}) {
      const SpinLabel j(tj);
      ComplexMatrix mixed = ComplexMatrix::identity(j.dim());
      mixed *= 1.0 / j.dim();
      const MapSpec map{j, {0.4, 0.2, -0.9}};
      CHECK(min_eig_closed_form(map, mixed) == Catch::Approx(1.0 / j.dim()).margin(1e-14));
    }
  }

  SECTION("spin-coherent state along x at the j = 1 positivity edge gives 0") {
    const SpinLabel j1(2);
    const double r = 1.0 / std::sqrt(2.0);
    const PureState coherent_x(3, {cdouble(0.5, 0.0), cdouble(r, 0.0), cdouble(0.5, 0.0)});
    const MapSpec map{j1, {2.0 / 3.0, 0.0, 0.0}};
    CHECK(min_eig_closed_form(map, coherent_x.outer()) == Catch::Approx(0.0).margin(1e-14));
  }

  SECTION("matches the numeric eigensolver on arbitrary Hermitian inputs") {
    std::mt19937_64 rng(17);
    for (int tj : {1, 2, 3, 4}) {
      const SpinLabel j(tj);
      const MapSpec map{j, random_triple(rng)};
      for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix herm = testutil::random_hermitian(j.dim(), rng);
        CHECK(min_eig_closed_form(map, herm) ==
              Catch::Approx(min_eig(apply(map, herm))).margin(1e-10));
        const ComplexMatrix rho = testutil::random_density(j.dim(), rng);
        CHECK(min_eig_closed_form(map, rho) ==
              Catch::Approx(min_eig(apply(map, rho))).margin(1e-10));
      }
    }
  }
}

TEST_CASE("Choi constructions agree and have the advertised special cases") {
  SECTION("fully depolarizing triple gives I/d^2") {
    for (int tj : {1, 2}) {
      const SpinLabel j(tj);
      const int dd = j.dim() * j.dim();
      ComplexMatrix expected = ComplexMatrix::identity(dd);
      expected *= 1.0 / dd;
      const MapSpec map{j, {0.0, 0.0, 0.0}};
      CHECK(frobenius_distance(choi_definitional(map), expected) < 1e-15);
      CHECK(frobenius_distance(choi_closed_form(map), expected) < 1e-15);
      CHECK(frobenius_distance(choi_partial_transpose(map), expected) < 1e-15);
    }
  }

  SECTION("identity channel at j = 1/2 gives the maximally entangled projector") {
    const SpinLabel j(1);
    const MapSpec map{j, {1.0, 1.0, 1.0}};
    CHECK(frobenius_distance(choi_definitional(map), maximally_entangled(j).outer()) < 1e-14);
  }

  SECTION("tetrahedron vertex (1,-1,-1) at j = 1/2 yields a rank-one PSD Choi") {
    const MapSpec map{SpinLabel(1), {1.0, -1.0, -1.0}};
    const Spectrum s = eigvals_hermitian(choi_closed_form(map));
    CHECK(s.values[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.values[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.values[2] == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.values[3] == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("definitional and closed-form paths agree for random triples") {
    std::mt19937_64 rng(19);
    for (int tj : {1, 2, 3, 4}) {
      const SpinLabel j(tj);
      for (int rep = 0; rep < 25; ++rep) {
        const MapSpec map{j, random_triple(rng)};
        CHECK(frobenius_distance(choi_definitional(map), choi_closed_form(map)) < 1e-12);
      }
    }
  }

  SECTION("unit trace for random triples") {
    std::mt19937_64 rng(23);
    for (int tj : {1, 2, 3, 4}) {
      const MapSpec map{SpinLabel(tj), random_triple(rng)};
      CHECK(choi_closed_form(map).trace().real() == Catch::Approx(1.0).margin(1e-13));
      CHECK(std::abs(choi_closed_form(map).trace().imag()) < 1e-15);
    }
  }
}

TEST_CASE("partial transpose of the Choi matrix: three routes, one matrix") {
  std::mt19937_64 rng(29);
  for (int tj : {1, 2, 3, 4}) {
    const SpinLabel j(tj);
    const int d = j.dim();
    const MapSpec map{j, random_triple(rng)};

    const ComplexMatrix direct = partial_transpose_second(choi_definitional(map), d, d);
    CHECK(frobenius_distance(choi_partial_transpose(map), direct) < 1e-12);

    const MapSpec flipped{j, {map.lambdas.lambda1, -map.lambdas.lambda2, map.lambdas.lambda3}};
    CHECK(frobenius_distance(choi_partial_transpose(map), choi_closed_form(flipped)) == 0.0);
  }
}

TEST_CASE("pair application of the map") {
  std::mt19937_64 rng(31);

  SECTION("unitality") {
    for (int tj : {1, 2}) {
      const SpinLabel j(tj);
      const int dd = j.dim() * j.dim();
      const MapSpec map{j, random_triple(rng)};
      CHECK(frobenius_distance(apply_tensor2(map, ComplexMatrix::identity(dd)),
                               ComplexMatrix::identity(dd)) < 1e-13);
    }
  }

  SECTION("on the maximally entangled projector it reproduces the squared map's Choi") {
    for (int tj : {1, 2, 3}) {
      const SpinLabel j(tj);
      const MapSpec map{j, random_triple(rng)};
      const ComplexMatrix lhs = apply_tensor2(map, maximally_entangled(j).outer());
      const ComplexMatrix rhs = choi_closed_form(compose_self(map));
      CHECK(frobenius_distance(lhs, rhs) < 1e-13);
    }
  }

  SECTION("factorizes on product operators") {
    for (int tj : {1, 2}) {
      const SpinLabel j(tj);
      const MapSpec map{j, random_triple(rng)};
      const ComplexMatrix a = testutil::random_hermitian(j.dim(), rng);
      const ComplexMatrix b = testutil::random_hermitian(j.dim(), rng);
      CHECK(frobenius_distance(apply_tensor2(map, kron(a, b)), kron(apply(map, a), apply(map, b))) <
            1e-12);
    }
  }

  SECTION("dimension mismatch") {
    const MapSpec map{SpinLabel(2), {0.5, 0.5, 0.5}};
    CHECK_THROWS_AS(apply_tensor2(map, ComplexMatrix(3)), dimension_error);
  }
}
