// The spin polarization-scaling map: application to operators, composition,
// the closed-form minimal output eigenvalue, and the Choi matrix built both
// from the definition and from the J_i (x) J_i expansion.
#pragma once

#include <cmath>
#include <stdexcept>

#include "spinscale/hermitian_eig.hpp"
#include "spinscale/spin_algebra.hpp"

namespace spinscale {

/// The three real scaling factors applied to the polarization components.
/// No range restriction at construction; classification decides admissibility.
struct ScalingTriple {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;

  ScalingTriple() = default;
  ScalingTriple(double l1, double l2, double l3) : lambda1(l1), lambda2(l2), lambda3(l3) {
    if (!std::isfinite(l1) || !std::isfinite(l2) || !std::isfinite(l3))
      throw std::invalid_argument("ScalingTriple: components must be finite");
  }

  double operator[](int i) const { return i == 0 ? lambda1 : (i == 1 ? lambda2 : lambda3); }
  double max_abs() const {
    return std::max({std::abs(lambda1), std::abs(lambda2), std::abs(lambda3)});
  }
  double sum_squares() const { return lambda1 * lambda1 + lambda2 * lambda2 + lambda3 * lambda3; }
  double product() const { return lambda1 * lambda2 * lambda3; }
  ScalingTriple squared() const {
    return {lambda1 * lambda1, lambda2 * lambda2, lambda3 * lambda3};
  }
};

/// A spin label plus a scaling triple; fully determines the map.
struct MapSpec {
  SpinLabel j;
  ScalingTriple lambdas;
};

/// Average spin projections p_i = tr[rho J_i].
struct PolarizationVector {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double norm() const { return std::sqrt(p1 * p1 + p2 * p2 + p3 * p3); }
};

namespace detail {
// 3 / (j(j+1)(2j+1)) and friends from the exact integer 2j:
// j(j+1)(2j+1) = 2j(2j+2)(2j+1)/4.
inline double inv_weight(SpinLabel j) {
  const double tj = j.two_j();
  return 12.0 / (tj * (tj + 1.0) * (tj + 2.0));
}
inline double choi_coupling(SpinLabel j) {  // 3 / (j(j+1))
  const double tj = j.two_j();
  return 12.0 / (tj * (tj + 2.0));
}
}  // namespace detail

/// Applies the map: (1/d) tr[X] I + (3/(j(j+1)d)) sum_i lambda_i tr[X J_i] J_i.
/// Linear, trace-preserving, unital, Hermiticity-preserving.
inline ComplexMatrix apply(const MapSpec& map, const ComplexMatrix& x) {
  const int d = map.j.dim();
  if (x.dim() != d) throw dimension_error("apply: operator dimension does not match the spin label");
  const AngularMomentum am = build_angular_momentum(map.j);
  const double w = detail::inv_weight(map.j);

  ComplexMatrix out = ComplexMatrix::identity(d);
  out *= x.trace() / static_cast<double>(d);
  const ComplexMatrix* js[3] = {&am.j1, &am.j2, &am.j3};
  for (int i = 0; i < 3; ++i) {
    const cdouble coeff = w * map.lambdas[i] * trace_product(x, *js[i]);
    if (coeff == 0.0) continue;
    ComplexMatrix term = *js[i];
    term *= coeff;
    out += term;
  }
  return out;
}

/// p_i = tr[X J_i] (real parts; X is expected Hermitian).
inline PolarizationVector polarization(const ComplexMatrix& x, SpinLabel j) {
  if (x.dim() != j.dim()) throw dimension_error("polarization: dimension mismatch");
  const AngularMomentum am = build_angular_momentum(j);
  return {trace_product(x, am.j1).real(), trace_product(x, am.j2).real(),
          trace_product(x, am.j3).real()};
}

/// The composition of the map with itself scales each component by lambda_i^2.
inline MapSpec compose_self(const MapSpec& map) {
  return {map.j, map.lambdas.squared()};
}

/// Minimal eigenvalue of the map's output on Hermitian X, in closed form:
/// (1/d) (tr[X] - (3/(j+1)) sqrt(sum_i (lambda_i tr[X J_i])^2)).
inline double min_eig_closed_form(const MapSpec& map, const ComplexMatrix& x) {
  const int d = map.j.dim();
  if (x.dim() != d) throw dimension_error("min_eig_closed_form: dimension mismatch");
  const AngularMomentum am = build_angular_momentum(map.j);
  const double t1 = map.lambdas.lambda1 * trace_product(x, am.j1).real();
  const double t2 = map.lambdas.lambda2 * trace_product(x, am.j2).real();
  const double t3 = map.lambdas.lambda3 * trace_product(x, am.j3).real();
  const double fac = 6.0 / (map.j.two_j() + 2.0);  // 3/(j+1)
  return (x.trace().real() - fac * std::sqrt(t1 * t1 + t2 * t2 + t3 * t3)) / d;
}

/// Choi matrix straight from the definition,
/// (1/d) sum_{m,m'} Phi[|jm><jm'|] (x) |jm><jm'|.
/// Shares no code path with choi_closed_form; the pair is a self-test.
inline ComplexMatrix choi_definitional(const MapSpec& map) {
  const int d = map.j.dim();
  ComplexMatrix out(d * d);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (int m = 0; m < d; ++m) {
    for (int mp = 0; mp < d; ++mp) {
      ComplexMatrix unit(d);
      unit(m, mp) = 1.0;
      const ComplexMatrix mapped = apply(map, unit);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out(r * d + m, c * d + mp) += inv_d * mapped(r, c);
    }
  }
  return out;
}

/// Choi matrix in closed form:
/// (1/d^2) [I(x)I + (3/(j(j+1))) (l1 J1(x)J1 - l2 J2(x)J2 + l3 J3(x)J3)].
/// The minus sign on the lambda2 term reflects J2^T = -J2 in this basis.
inline ComplexMatrix choi_closed_form(const MapSpec& map) {
  const int d = map.j.dim();
  const AngularMomentum am = build_angular_momentum(map.j);
  const double g = detail::choi_coupling(map.j);

  ComplexMatrix out = ComplexMatrix::identity(d * d);
  out += kron(am.j1, am.j1) * cdouble(g * map.lambdas.lambda1);
  out -= kron(am.j2, am.j2) * cdouble(g * map.lambdas.lambda2);
  out += kron(am.j3, am.j3) * cdouble(g * map.lambdas.lambda3);
  out *= 1.0 / static_cast<double>(d * d);
  return out;
}

/// Partial transpose of the Choi matrix; identical to the Choi matrix of the
/// map with lambda2 -> -lambda2.
inline ComplexMatrix choi_partial_transpose(const MapSpec& map) {
  const MapSpec flipped{map.j,
                        {map.lambdas.lambda1, -map.lambdas.lambda2, map.lambdas.lambda3}};
  return choi_closed_form(flipped);
}

namespace detail {

// Phi acting on the first tensor factor of a d^2-dimensional operator.
inline ComplexMatrix apply_first_factor(const MapSpec& map, const ComplexMatrix& y) {
  const int d = map.j.dim();
  ComplexMatrix out(d * d);
  for (int a = 0; a < d; ++a) {
    for (int ap = 0; ap < d; ++ap) {
      ComplexMatrix unit(d);
      unit(a, ap) = 1.0;
      const ComplexMatrix mapped = apply(map, unit);
      // block B[b,b'] = Y[(a b),(a' b')]
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const cdouble v = mapped(r, c);
          if (v == 0.0) continue;
          for (int b = 0; b < d; ++b)
            for (int bp = 0; bp < d; ++bp) out(r * d + b, c * d + bp) += v * y(a * d + b, ap * d + bp);
        }
    }
  }
  return out;
}

// Phi acting on the second tensor factor.
inline ComplexMatrix apply_second_factor(const MapSpec& map, const ComplexMatrix& y) {
  const int d = map.j.dim();
  ComplexMatrix out(d * d);
  for (int b = 0; b < d; ++b) {
    for (int bp = 0; bp < d; ++bp) {
      ComplexMatrix unit(d);
      unit(b, bp) = 1.0;
      const ComplexMatrix mapped = apply(map, unit);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const cdouble v = mapped(r, c);
          if (v == 0.0) continue;
          for (int a = 0; a < d; ++a)
            for (int ap = 0; ap < d; ++ap) out(a * d + r, ap * d + c) += v * y(a * d + b, ap * d + bp);
        }
    }
  }
  return out;
}

}  // namespace detail

/// (Phi (x) Phi)[Y] on a d^2-dimensional operator, computed as two sequential
/// single-side applications rather than a d^4 x d^4 superoperator.
inline ComplexMatrix apply_tensor2(const MapSpec& map, const ComplexMatrix& y) {
  const int d = map.j.dim();
  if (y.dim() != d * d) throw dimension_error("apply_tensor2: operator dimension must be d^2");
  return detail::apply_second_factor(map, detail::apply_first_factor(map, y));
}

}  // namespace spinscale
