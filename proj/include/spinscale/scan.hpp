// Parameter-space grid scans: evaluates the requested properties on a cubic
// lambda grid and emits one CSV row per point in deterministic lambda1-major
// order, optionally partitioned across worker threads.
#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "spinscale/classifier.hpp"

namespace spinscale {

enum class Property { pos, cp, ppt, phi2cp, phi2ppt };

inline constexpr Property kAllProperties[] = {Property::pos, Property::cp, Property::ppt,
                                              Property::phi2cp, Property::phi2ppt};

inline std::optional<Property> parse_property(std::string_view name) {
  if (name == "pos") return Property::pos;
  if (name == "cp") return Property::cp;
  if (name == "ppt") return Property::ppt;
  if (name == "phi2cp") return Property::phi2cp;
  if (name == "phi2ppt") return Property::phi2ppt;
  return std::nullopt;
}

/// Numerical failure at a specific grid point.
class scan_numerical_error : public std::runtime_error {
public:
  scan_numerical_error(const ScalingTriple& l, const std::string& what)
      : std::runtime_error("at lambda = (" + std::to_string(l.lambda1) + ", " +
                           std::to_string(l.lambda2) + ", " + std::to_string(l.lambda3) +
                           "): " + what),
        lambdas(l) {}
  ScalingTriple lambdas;
};

struct ScanConfig {
  SpinLabel j;
  double range_min = -1.0;
  double range_max = 1.0;
  int steps = 41;  // points per axis, both endpoints included
  std::vector<Property> properties;  // empty means all five
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::string output_path;
  int workers = 1;

  bool wants(Property p) const {
    if (properties.empty()) return true;
    for (Property q : properties)
      if (q == p) return true;
    return false;
  }

  void validate() const {
    if (steps < 2) throw std::invalid_argument("scan: steps must be >= 2");
    if (!(range_min < range_max)) throw std::invalid_argument("scan: range_min must be < range_max");
    if (workers < 1) throw std::invalid_argument("scan: workers must be >= 1");
  }
};

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

struct ScanColumns {
  bool pos = false, cp = false, ppt = false, phi2cp = false, phi2ppt = false;
};

inline ScanColumns columns_for(const ScanConfig& cfg) {
  return {cfg.wants(Property::pos), cfg.wants(Property::cp), cfg.wants(Property::ppt),
          cfg.wants(Property::phi2cp), cfg.wants(Property::phi2ppt)};
}

inline std::string scan_header(const ScanColumns& col) {
  std::string h = "lambda1,lambda2,lambda3";
  if (col.pos) h += ",pos";
  if (col.cp) h += ",cp";
  if (col.ppt) h += ",ppt";
  if (col.phi2cp) h += ",phi2_cp";
  if (col.phi2ppt) h += ",phi2_ppt";
  if (col.cp) h += ",min_choi_eig";
  if (col.ppt) h += ",min_ptchoi_eig";
  if (col.phi2cp) h += ",min_phi2_choi_eig";
  return h;
}

inline std::string scan_row(const ScanConfig& cfg, const ScanColumns& col, double l1, double l2,
                            double l3) {
  const MapSpec map{cfg.j, ScalingTriple(l1, l2, l3)};
  const double tol = cfg.tol;

  bool cp = false, ppt = false, p2cp = false, p2ppt = false;
  double cp_eig = 0.0, pt_eig = 0.0, p2_eig = 0.0;
  if (col.cp || col.ppt) {
    const PsdCertificate c = is_cp(map, tol);
    cp = c.psd;
    cp_eig = c.min_eig;
  }
  if (col.ppt) {
    const PsdCertificate pt = certify(eigvals_hermitian(choi_partial_transpose(map)), tol);
    ppt = cp && pt.psd;
    pt_eig = pt.min_eig;
  }
  if (col.phi2cp || col.phi2ppt) {
    const MapSpec sq = compose_self(map);
    const PsdCertificate c2 = is_cp(sq, tol);
    p2cp = c2.psd;
    p2_eig = c2.min_eig;
    if (col.phi2ppt) {
      const PsdCertificate pt2 = certify(eigvals_hermitian(choi_partial_transpose(sq)), tol);
      p2ppt = p2cp && pt2.psd;
    }
  }

  std::string row =
      format_double(l1) + "," + format_double(l2) + "," + format_double(l3);
  if (col.pos) row += positivity_exact(map, tol) ? ",1" : ",0";
  if (col.cp) row += cp ? ",1" : ",0";
  if (col.ppt) row += ppt ? ",1" : ",0";
  if (col.phi2cp) row += p2cp ? ",1" : ",0";
  if (col.phi2ppt) row += p2ppt ? ",1" : ",0";
  if (col.cp) row += "," + format_double(cp_eig);
  if (col.ppt) row += "," + format_double(pt_eig);
  if (col.phi2cp) row += "," + format_double(p2_eig);
  return row;
}

}  // namespace detail

/// Runs the scan and streams CSV to `out` (header first, then steps^3 rows in
/// lambda1-major order). Progress lines go to `progress` if given. The output
/// is byte-identical for a given config regardless of the worker count.
inline void run_scan(const ScanConfig& cfg, std::ostream& out, std::ostream* progress = nullptr) {
  cfg.validate();
  const detail::ScanColumns col = detail::columns_for(cfg);
  const std::vector<double> axis = detail::linspace(cfg.range_min, cfg.range_max, cfg.steps);
  const int n = cfg.steps;
  const std::int64_t total = static_cast<std::int64_t>(n) * n * n;

  std::vector<std::string> rows(static_cast<std::size_t>(total));
  std::atomic<std::int64_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](std::int64_t begin, std::int64_t end) {
    try {
      for (std::int64_t idx = begin; idx < end; ++idx) {
        const int i1 = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
        const int i2 = static_cast<int>((idx / n) % n);
        const int i3 = static_cast<int>(idx % n);
        const double l1 = axis[static_cast<std::size_t>(i1)];
        const double l2 = axis[static_cast<std::size_t>(i2)];
        const double l3 = axis[static_cast<std::size_t>(i3)];
        try {
          rows[static_cast<std::size_t>(idx)] = detail::scan_row(cfg, col, l1, l2, l3);
        } catch (const std::exception& e) {
          throw scan_numerical_error(ScalingTriple(l1, l2, l3), e.what());
        }
        const std::int64_t d = ++done;
        if (progress != nullptr && d % (static_cast<std::int64_t>(n) * n) == 0) {
          std::lock_guard<std::mutex> lock(progress_mutex);
          *progress << "scan: " << d / (static_cast<std::int64_t>(n) * n) << "/" << n
                    << " planes done\n";
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(cfg.workers, total));
  if (workers <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      const std::int64_t begin = total * t / workers;
      const std::int64_t end = total * (t + 1) / workers;
      pool.emplace_back(work, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  out << detail::scan_header(col) << '\n';
  for (const std::string& row : rows) out << row << '\n';
}

}  // namespace spinscale
