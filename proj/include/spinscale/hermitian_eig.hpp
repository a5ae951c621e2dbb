// Eigenvalues of complex Hermitian matrices by cyclic Jacobi sweeps with
// complex 2x2 rotations. Dimensions here stay small (a few hundred at most),
// where Jacobi is simple and close to machine accuracy.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinscale/spin_algebra.hpp"

namespace spinscale {

class not_hermitian_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class no_convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues plus the solver's convergence record.
struct Spectrum {
  std::vector<double> values;  // ascending
  int iterations = 0;          // completed sweeps
  double residual = 0.0;       // final off-diagonal Frobenius norm

  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double spectral_radius() const { return std::max(std::abs(values.front()), std::abs(values.back())); }
};

struct EigOptions {
  double hermiticity_tol = 1e-12;   // absolute, entrywise
  double convergence_factor = 1e-13;  // stop when off-norm < factor * ||A||_F
  int max_sweeps = 64;
};

/// Eigenvalues of a Hermitian matrix, sorted ascending.
/// Throws not_hermitian_error / no_convergence_error.
inline Spectrum eigvals_hermitian(const ComplexMatrix& a, const EigOptions& opt = {}) {
  if (!a.is_hermitian(opt.hermiticity_tol))
    throw not_hermitian_error("eigvals_hermitian: input is not Hermitian");

  const int n = a.dim();
  // Work on the Hermitian part so rounding asymmetry cannot accumulate.
  ComplexMatrix w(n);
  for (int r = 0; r < n; ++r) {
    w(r, r) = cdouble((a(r, r) + std::conj(a(r, r))).real() * 0.5, 0.0);
    for (int c = r + 1; c < n; ++c) {
      const cdouble v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      w(r, c) = v;
      w(c, r) = std::conj(v);
    }
  }

  const double target = opt.convergence_factor * frobenius_norm(w);
  auto off_norm = [&]() {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) s += std::norm(w(r, c));
    return std::sqrt(2.0 * s);
  };

  int sweeps = 0;
  double off = off_norm();
  while (off > target && sweeps < opt.max_sweeps) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cdouble b = w(p, q);
        const double h = std::abs(b);
        if (h == 0.0) continue;
        const cdouble phase = b / h;  // pulls the pivot onto the real axis

        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * h);
        const double t = tau == 0.0
                             ? 1.0
                             : -((tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau)));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary V: V(p,p) = phase*c, V(p,q) = -phase*s, V(q,p) = s, V(q,q) = c.
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cdouble alpha = w(k, p);
          const cdouble gamma = w(k, q);
          w(k, p) = alpha * (phase * c) + gamma * s;
          w(k, q) = alpha * (-phase * s) + gamma * c;
          w(p, k) = std::conj(w(k, p));
          w(q, k) = std::conj(w(k, q));
        }
        w(p, p) = app + t * h;
        w(q, q) = aqq - t * h;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
      }
    }
    ++sweeps;
    off = off_norm();
  }
  if (off > target)
    throw no_convergence_error("eigvals_hermitian: no convergence within the sweep cap");

  Spectrum out;
  out.values.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) out.values[static_cast<std::size_t>(r)] = w(r, r).real();
  std::sort(out.values.begin(), out.values.end());
  out.iterations = sweeps;
  out.residual = off;
  return out;
}

inline double min_eig(const ComplexMatrix& a, const EigOptions& opt = {}) {
  return eigvals_hermitian(a, opt).min();
}

/// PSD within a relative tolerance: min eigenvalue >= -tol * max(1, spectral radius).
inline bool is_psd(const ComplexMatrix& a, double tol = 1e-9, const EigOptions& opt = {}) {
  const Spectrum s = eigvals_hermitian(a, opt);
  return s.min() >= -tol * std::max(1.0, s.spectral_radius());
}

}  // namespace spinscale
