// Shared generators for the test suites: random Hermitian operators, random
// density matrices, random unitaries composed from 2x2 rotations.
#pragma once

#include <random>
#include <vector>

#include "spinscale/spinscale.hpp"

namespace testutil {

using spinscale::cdouble;
using spinscale::ComplexMatrix;
using spinscale::PureState;

inline ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m(r, r) = g(rng);
    for (int c = r + 1; c < dim; ++c) {
      const cdouble z(g(rng), g(rng));
      m(r, c) = z;
      m(c, r) = std::conj(z);
    }
  }
  return m;
}

inline PureState random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cdouble> v(static_cast<std::size_t>(dim));
  for (cdouble& z : v) z = cdouble(g(rng), g(rng));
  return PureState::normalized(std::move(v));
}

inline ComplexMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cdouble(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

// Product of complex 2x2 rotations over every index pair, then a random
// diagonal phase; exactly unitary by construction.
inline ComplexMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  ComplexMatrix u = ComplexMatrix::identity(dim);
  for (int p = 0; p < dim - 1; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      const double theta = angle(rng);
      const double beta = angle(rng);
      const cdouble phase(std::cos(beta), std::sin(beta));
      const double c = std::cos(theta), s = std::sin(theta);
      ComplexMatrix g = ComplexMatrix::identity(dim);
      g(p, p) = phase * c;
      g(p, q) = -phase * s;
      g(q, p) = s;
      g(q, q) = c;
      u = u * g;
    }
  }
  ComplexMatrix d = ComplexMatrix::identity(dim);
  for (int k = 0; k < dim; ++k) {
    const double beta = angle(rng);
    d(k, k) = cdouble(std::cos(beta), std::sin(beta));
  }
  return u * d;
}

}  // namespace testutil
