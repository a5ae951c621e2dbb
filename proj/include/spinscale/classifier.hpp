// Decides the property hierarchy for a given map: positivity (sufficient,
// necessary, and the exact criterion), complete positivity, the PPT bound
// that entanglement breaking requires, and the squared-map analogues that
// 2-tensor-stable positivity and 2-local entanglement annihilation require.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinscale/hermitian_eig.hpp"
#include "spinscale/polarization_map.hpp"
#include "spinscale/spin_algebra.hpp"

namespace spinscale {

inline constexpr double kDefaultTol = 1e-9;

/// PSD verdict plus the minimal eigenvalue that certifies it.
struct PsdCertificate {
  bool psd = false;
  double min_eig = 0.0;
};

namespace detail {
inline double positivity_bound(SpinLabel j) {  // (j+1)/(3j)
  return (j.two_j() + 2.0) / (3.0 * j.two_j());
}
inline PsdCertificate certify(const Spectrum& s, double tol) {
  return {s.min() >= -tol * std::max(1.0, s.spectral_radius()), s.min()};
}
}  // namespace detail

/// Sufficient: sum_i lambda_i^2 <= ((j+1)/(3j))^2.
inline bool positivity_sufficient(const MapSpec& map) {
  const double b = detail::positivity_bound(map.j);
  return map.lambdas.sum_squares() <= b * b;
}

/// Necessary: max_i |lambda_i| <= 1.
inline bool positivity_necessary(const MapSpec& map, double tol = kDefaultTol) {
  return map.lambdas.max_abs() <= 1.0 + tol;
}

/// Exact criterion: max_i |lambda_i| <= (j+1)/(3j). States reach every
/// polarization vector in the closed ball of radius j, and the minimal
/// output eigenvalue over that ball bottoms out at a pole along the axis
/// of the largest |lambda_i|.
inline bool positivity_exact(const MapSpec& map, double tol = kDefaultTol) {
  return map.lambdas.max_abs() <= detail::positivity_bound(map.j) + tol;
}

struct SamplingResult {
  double min_found = 0.0;
  PureState argmin_state;
};

/// Brute-force check: minimum of the closed-form minimal output eigenvalue
/// over `samples` Gaussian-random pure states. Deterministic given the seed.
inline SamplingResult positivity_sampling_oracle(const MapSpec& map, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("positivity_sampling_oracle: samples must be >= 1");
  const int d = map.j.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  double best = std::numeric_limits<double>::infinity();
  std::vector<cdouble> best_vec;
  std::vector<cdouble> v(static_cast<std::size_t>(d));
  for (int s = 0; s < samples; ++s) {
    for (cdouble& z : v) z = cdouble(gauss(rng), gauss(rng));
    const PureState state = PureState::normalized(v);
    const double val = min_eig_closed_form(map, state.outer());
    if (val < best) {
      best = val;
      best_vec = state.amplitudes();
    }
  }
  return {best, PureState(d, std::move(best_vec))};
}

/// Complete positivity: the Choi matrix is PSD.
inline PsdCertificate is_cp(const MapSpec& map, double tol = kDefaultTol) {
  return detail::certify(eigvals_hermitian(choi_closed_form(map)), tol);
}

/// Closed-form CP test where one is known: the tetrahedron test at j = 1/2
/// and the cubic-plus-box test at j = 1. Absent for other spins.
inline std::optional<bool> cp_closed_form(const MapSpec& map, double tol = kDefaultTol) {
  const ScalingTriple& l = map.lambdas;
  if (map.j.two_j() == 1) {
    const double plus = 1.0 + l.lambda3 - std::abs(l.lambda1 + l.lambda2);
    const double minus = 1.0 - l.lambda3 - std::abs(l.lambda1 - l.lambda2);
    return std::min(plus, minus) >= -tol;
  }
  if (map.j.two_j() == 2) {
    const double cubic = 4.0 - 9.0 * l.sum_squares() + 27.0 * l.product();
    return cubic >= -tol && l.max_abs() <= 2.0 / 3.0 + tol;
  }
  return std::nullopt;
}

/// PPT bound that entanglement breaking requires: both the Choi matrix and
/// its partial transpose PSD. The returned eigenvalue certifies the partial
/// transpose; `psd` combines it with is_cp.
inline PsdCertificate ppt_necessary_eb(const MapSpec& map, double tol = kDefaultTol) {
  const PsdCertificate cp = is_cp(map, tol);
  const PsdCertificate pt = detail::certify(eigvals_hermitian(choi_partial_transpose(map)), tol);
  return {cp.psd && pt.psd, pt.min_eig};
}

/// CP of the squared map (necessary for 2-tensor-stable positivity).
inline PsdCertificate phi2_cp(const MapSpec& map, double tol = kDefaultTol) {
  return is_cp(compose_self(map), tol);
}

/// PPT bound on the squared map (necessary for 2-local entanglement annihilation).
inline bool phi2_ppt(const MapSpec& map, double tol = kDefaultTol) {
  return ppt_necessary_eb(compose_self(map), tol).psd;
}

/// Minimal eigenvalue of (Phi (x) Phi)[|state><state|]; a negative value
/// certifies that the map is not 2-tensor-stable positive.
inline double tensor2_witness(const MapSpec& map, const PureState& state) {
  const int d = map.j.dim();
  if (state.dim() != d * d) throw dimension_error("tensor2_witness: state dimension must be d^2");
  return min_eig(apply_tensor2(map, state.outer()));
}

/// (|m=j> (x) |m=j> + |m=-j> (x) |m=-j|) / sqrt(2): the Schmidt-rank-2
/// state used by the counterexample search. At j = 1/2 it coincides with
/// the maximally entangled state.
inline PureState canonical_witness_state(SpinLabel j) {
  const int d = j.dim();
  std::vector<cdouble> v(static_cast<std::size_t>(d) * d);
  const double a = 1.0 / std::sqrt(2.0);
  v.front() = a;
  v.back() = a;
  return PureState(d * d, std::move(v));
}

struct HuntResult {
  ScalingTriple lambdas;
  double witness_value = 0.0;
  double phi2_certificate = 0.0;
};

namespace detail {
inline std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double span = hi - lo;
  for (int k = 0; k < steps; ++k)
    out[static_cast<std::size_t>(k)] = k == steps - 1 ? hi : lo + span * k / (steps - 1);
  return out;
}
}  // namespace detail

/// Searches a grid over [-1,1]^3 (then the same grid with seeded random
/// jitter) for a map whose square is completely positive while the canonical
/// Schmidt-rank-2 state witnesses a negative output eigenvalue of
/// Phi (x) Phi. Returns the first hit in lambda1-major order.
inline std::optional<HuntResult> counterexample_hunt(SpinLabel j, int grid_steps, std::uint64_t seed,
                                                     double tol = kDefaultTol) {
  if (grid_steps < 2) throw std::invalid_argument("counterexample_hunt: grid_steps must be >= 2");
  const std::vector<double> axis = detail::linspace(-1.0, 1.0, grid_steps);
  const PureState witness = canonical_witness_state(j);

  auto probe = [&](double l1, double l2, double l3) -> std::optional<HuntResult> {
    const MapSpec m{j, ScalingTriple(l1, l2, l3)};
    const PsdCertificate cert = phi2_cp(m, tol);
    if (!cert.psd) return std::nullopt;
    const double w = tensor2_witness(m, witness);
    if (w < -10.0 * tol) return HuntResult{m.lambdas, w, cert.min_eig};
    return std::nullopt;
  };

  for (double l1 : axis)
    for (double l2 : axis)
      for (double l3 : axis)
        if (auto hit = probe(l1, l2, l3)) return hit;

  // Second pass: jitter each grid point by up to half the spacing.
  std::mt19937_64 rng(seed);
  const double half = (axis.size() > 1 ? (axis[1] - axis[0]) : 1.0) / 2.0;
  std::uniform_real_distribution<double> jitter(-half, half);
  auto clamp1 = [](double x) { return std::max(-1.0, std::min(1.0, x)); };
  for (double l1 : axis)
    for (double l2 : axis)
      for (double l3 : axis)
        if (auto hit = probe(clamp1(l1 + jitter(rng)), clamp1(l2 + jitter(rng)), clamp1(l3 + jitter(rng))))
          return hit;

  return std::nullopt;
}

/// Booleans plus the numeric certificates behind them, for one map.
struct ClassificationReport {
  bool positive_sufficient = false;
  bool positive_necessary = false;
  bool positive_exact = false;
  bool cp = false;
  bool ppt_both_signs = false;
  bool phi2_cp = false;
  bool phi2_ppt = false;
  double min_choi_eig = 0.0;
  double min_ptchoi_eig = 0.0;
  double min_phi2_choi_eig = 0.0;
  std::map<std::string, double> closed_form_values;  // empty unless j is 1/2 or 1
  double tol = kDefaultTol;

  /// cp => exact => necessary, sufficient => exact, and the PPT booleans
  /// never outrun their CP counterparts.
  bool implications_ok() const {
    return (!cp || positive_exact) && (!positive_exact || positive_necessary) &&
           (!positive_sufficient || positive_exact) && (!ppt_both_signs || cp) &&
           (!phi2_ppt || phi2_cp);
  }
};

namespace detail {
inline std::map<std::string, double> closed_form_values(const MapSpec& map) {
  const ScalingTriple& l = map.lambdas;
  std::map<std::string, double> out;
  if (map.j.two_j() == 1) {
    const ScalingTriple sq = l.squared();
    out["cp_tetrahedron_slack_plus"] = 1.0 + l.lambda3 - std::abs(l.lambda1 + l.lambda2);
    out["cp_tetrahedron_slack_minus"] = 1.0 - l.lambda3 - std::abs(l.lambda1 - l.lambda2);
    out["eb_octahedron_slack"] =
        1.0 - (std::abs(l.lambda1) + std::abs(l.lambda2) + std::abs(l.lambda3));
    out["phi2_cp_tetrahedron_slack_plus"] = 1.0 + sq.lambda3 - std::abs(sq.lambda1 + sq.lambda2);
    out["phi2_cp_tetrahedron_slack_minus"] = 1.0 - sq.lambda3 - std::abs(sq.lambda1 - sq.lambda2);
  } else if (map.j.two_j() == 2) {
    const ScalingTriple sq = l.squared();
    out["cp_cubic"] = 4.0 - 9.0 * l.sum_squares() + 27.0 * l.product();
    out["cp_box_slack"] = 2.0 / 3.0 - l.max_abs();
    out["ppt_cubic_plus"] = 4.0 - 9.0 * l.sum_squares() + 27.0 * l.product();
    out["ppt_cubic_minus"] = 4.0 - 9.0 * l.sum_squares() - 27.0 * l.product();
    out["phi2_cp_quartic"] = 4.0 - 9.0 * sq.sum_squares() + 27.0 * sq.product();
  }
  return out;
}
}  // namespace detail

/// Evaluates every property and collects the certificates. Throws
/// std::logic_error if the implication chain is ever violated.
inline ClassificationReport classify(const MapSpec& map, double tol = kDefaultTol) {
  ClassificationReport r;
  r.tol = tol;
  r.positive_sufficient = positivity_sufficient(map);
  r.positive_necessary = positivity_necessary(map, tol);
  r.positive_exact = positivity_exact(map, tol);

  const PsdCertificate cp = is_cp(map, tol);
  r.cp = cp.psd;
  r.min_choi_eig = cp.min_eig;

  const PsdCertificate pt = detail::certify(eigvals_hermitian(choi_partial_transpose(map)), tol);
  r.ppt_both_signs = cp.psd && pt.psd;
  r.min_ptchoi_eig = pt.min_eig;

  const MapSpec sq = compose_self(map);
  const PsdCertificate cp2 = is_cp(sq, tol);
  r.phi2_cp = cp2.psd;
  r.min_phi2_choi_eig = cp2.min_eig;

  const PsdCertificate pt2 = detail::certify(eigvals_hermitian(choi_partial_transpose(sq)), tol);
  r.phi2_ppt = cp2.psd && pt2.psd;

  r.closed_form_values = detail::closed_form_values(map);

  if (!r.implications_ok())
    throw std::logic_error("classify: implication chain violated (input sits on a tolerance boundary)");
  return r;
}

}  // namespace spinscale
