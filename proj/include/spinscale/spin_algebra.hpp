// Angular momentum operator matrices and the small dense complex-matrix
// toolkit (Kronecker products, partial transposes, traces, pure states)
// that the rest of the library is built on.
#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinscale {

using cdouble = std::complex<double>;

/// Thrown when an operand's dimension does not match the owning context.
class dimension_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Exact half-integer spin, stored as the integer 2j. Dimension d = 2j + 1.
class SpinLabel {
public:
  explicit SpinLabel(int two_j) : two_j_(two_j) {
    if (two_j < 1) throw std::invalid_argument("SpinLabel: 2j must be >= 1 (j = 0 is rejected)");
  }

  int two_j() const noexcept { return two_j_; }
  int dim() const noexcept { return two_j_ + 1; }
  double j() const noexcept { return 0.5 * two_j_; }

  /// Parses "n/2", a plain integer, or a decimal that is a half-integer
  /// to within 1e-9. Anything else throws std::invalid_argument.
  static SpinLabel parse(std::string_view text);

  /// "1/2", "1", "3/2", ... (integers render without the denominator).
  std::string to_string() const {
    if (two_j_ % 2 == 0) return std::to_string(two_j_ / 2);
    return std::to_string(two_j_) + "/2";
  }

  friend bool operator==(SpinLabel a, SpinLabel b) noexcept { return a.two_j_ == b.two_j_; }
  friend bool operator!=(SpinLabel a, SpinLabel b) noexcept { return a.two_j_ != b.two_j_; }

private:
  int two_j_;
};

/// Dense complex square matrix, row-major. The one carrier type for
/// operators, states and Choi matrices; bipartite indices are composite
/// row-major with the first factor major.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw dimension_error("ComplexMatrix: dimension must be positive");
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) m(r, r) = 1.0;
    return m;
  }

  int dim() const noexcept { return dim_; }

  cdouble& operator()(int r, int c) noexcept { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cdouble& operator()(int r, int c) const noexcept {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  cdouble trace() const {
    cdouble t = 0.0;
    for (int r = 0; r < dim_; ++r) t += (*this)(r, r);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cdouble& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max entrywise |A - A^dagger| < tol (absolute; entries here are O(j)).
  bool is_hermitian(double tol = 1e-12) const {
    for (int r = 0; r < dim_; ++r)
      for (int c = r; c < dim_; ++c)
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) >= tol) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cdouble z) {
    for (cdouble& v : a_) v *= z;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cdouble z, ComplexMatrix a) { return a *= z; }
  friend ComplexMatrix operator*(ComplexMatrix a, cdouble z) { return a *= z; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_dim(b);
    const int n = a.dim_;
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        const cdouble ark = a(r, k);
        if (ark == 0.0) continue;
        for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

private:
  void require_same_dim(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw dimension_error("ComplexMatrix: dimension mismatch");
  }

  int dim_ = 0;
  std::vector<cdouble> a_;
};

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw dimension_error("frobenius_distance: dimension mismatch");
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += std::norm(a(r, c) - b(r, c));
  return std::sqrt(s);
}

/// tr[A B] without forming the product.
inline cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw dimension_error("trace_product: dimension mismatch");
  cdouble t = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) t += a(r, c) * b(c, r);
  return t;
}

/// Kronecker product A (x) B with the first factor major:
/// (A(x)B)[(a b),(a' b')] = A[a,a'] B[b,b'].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int ca = 0; ca < da; ++ca) {
      const cdouble v = a(ra, ca);
      if (v == 0.0) continue;
      for (int rb = 0; rb < db; ++rb)
        for (int cb = 0; cb < db; ++cb) out(ra * db + rb, ca * db + cb) = v * b(rb, cb);
    }
  return out;
}

/// Transposes the second tensor factor of a (d1*d2)-dimensional bipartite
/// operator. Involutive and trace-preserving.
inline ComplexMatrix partial_transpose_second(const ComplexMatrix& y, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || y.dim() != d1 * d2)
    throw dimension_error("partial_transpose_second: dim(Y) must equal d1*d2");
  ComplexMatrix out(y.dim());
  for (int a = 0; a < d1; ++a)
    for (int ap = 0; ap < d1; ++ap)
      for (int b = 0; b < d2; ++b)
        for (int bp = 0; bp < d2; ++bp) out(a * d2 + bp, ap * d2 + b) = y(a * d2 + b, ap * d2 + bp);
  return out;
}

/// Traces out the first factor of a (d1*d2)-dimensional bipartite operator.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& y, int d1, int d2) {
  if (y.dim() != d1 * d2) throw dimension_error("partial_trace_first: dim(Y) must equal d1*d2");
  ComplexMatrix out(d2);
  for (int b = 0; b < d2; ++b)
    for (int bp = 0; bp < d2; ++bp)
      for (int a = 0; a < d1; ++a) out(b, bp) += y(a * d2 + b, a * d2 + bp);
  return out;
}

/// Traces out the second factor of a (d1*d2)-dimensional bipartite operator.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& y, int d1, int d2) {
  if (y.dim() != d1 * d2) throw dimension_error("partial_trace_second: dim(Y) must equal d1*d2");
  ComplexMatrix out(d1);
  for (int a = 0; a < d1; ++a)
    for (int ap = 0; ap < d1; ++ap)
      for (int b = 0; b < d2; ++b) out(a, ap) += y(a * d2 + b, ap * d2 + b);
  return out;
}

/// Unit-norm complex vector (norm checked to 1e-12 at construction).
class PureState {
public:
  PureState(int dim, std::vector<cdouble> amplitudes) : dim_(dim), amp_(std::move(amplitudes)) {
    if (dim < 1 || amp_.size() != static_cast<std::size_t>(dim))
      throw dimension_error("PureState: amplitude count must equal dim");
    double n2 = 0.0;
    for (const cdouble& z : amp_) n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
      throw std::invalid_argument("PureState: vector is not unit norm");
  }

  /// Normalizes an arbitrary nonzero vector.
  static PureState normalized(std::vector<cdouble> v) {
    double n2 = 0.0;
    for (const cdouble& z : v) n2 += std::norm(z);
    if (n2 <= 0.0) throw std::invalid_argument("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (cdouble& z : v) z *= inv;
    const int dim = static_cast<int>(v.size());
    return PureState(dim, std::move(v));
  }

  int dim() const noexcept { return dim_; }
  const cdouble& operator[](int i) const noexcept { return amp_[static_cast<std::size_t>(i)]; }
  const std::vector<cdouble>& amplitudes() const noexcept { return amp_; }

  /// |v><v|
  ComplexMatrix outer() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m(r, c) = amp_[r] * std::conj(amp_[c]);
    return m;
  }

private:
  int dim_ = 0;
  std::vector<cdouble> amp_;
};

/// <v|A|v>
inline cdouble expectation(const ComplexMatrix& a, const PureState& v) {
  if (a.dim() != v.dim()) throw dimension_error("expectation: dimension mismatch");
  cdouble s = 0.0;
  for (int r = 0; r < a.dim(); ++r) {
    cdouble row = 0.0;
    for (int c = 0; c < a.dim(); ++c) row += a(r, c) * v[c];
    s += std::conj(v[r]) * row;
  }
  return s;
}

struct AngularMomentum {
  ComplexMatrix j1, j2, j3;
};

/// The three (2j+1)-dimensional angular momentum matrices in the basis of
/// J3 eigenvectors ordered by descending m (row 0 is m = j). J3 is diagonal
/// with entries j, j-1, ..., -j; J1 and J2 come from the ladder operators
/// with elements sqrt((j -+ m)(j +- m + 1)), evaluated from the exact
/// integers 2j, 2m.
inline AngularMomentum build_angular_momentum(SpinLabel j) {
  const int d = j.dim();
  const int tj = j.two_j();
  AngularMomentum out{ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
  for (int k = 0; k < d; ++k) {
    const int two_m = tj - 2 * k;  // m of row/column k
    out.j3(k, k) = 0.5 * two_m;
  }
  // Raising operator sends column k (m) to row k-1 (m+1) with weight
  // sqrt((j - m)(j + m + 1)); (j - m)(j + m + 1) = (2j - 2m)(2j + 2m + 2)/4.
  for (int k = 1; k < d; ++k) {
    const int two_m = tj - 2 * k;
    const double w = std::sqrt(0.25 * (tj - two_m) * (tj + two_m + 2));
    out.j1(k - 1, k) += 0.5 * w;
    out.j1(k, k - 1) += 0.5 * w;
    out.j2(k - 1, k) += cdouble(0.0, -0.5) * w;
    out.j2(k, k - 1) += cdouble(0.0, 0.5) * w;
  }
  return out;
}

/// |j m>, m given as the exact integer 2m. Position follows the descending
/// basis ordering.
inline PureState basis_ket(SpinLabel j, int two_m) {
  const int tj = j.two_j();
  if (two_m > tj || two_m < -tj || (tj - two_m) % 2 != 0)
    throw std::invalid_argument("basis_ket: m must be one of j, j-1, ..., -j");
  std::vector<cdouble> v(static_cast<std::size_t>(j.dim()));
  v[static_cast<std::size_t>((tj - two_m) / 2)] = 1.0;
  return PureState(j.dim(), std::move(v));
}

/// (2j+1)^{-1/2} sum_m |j m> (x) |j m>, a d^2-dimensional bipartite vector.
inline PureState maximally_entangled(SpinLabel j) {
  const int d = j.dim();
  std::vector<cdouble> v(static_cast<std::size_t>(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m) v[static_cast<std::size_t>(m) * d + m] = a;
  return PureState(d * d, std::move(v));
}

// ---------------------------------------------------------------------------

inline SpinLabel SpinLabel::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("spin: empty string");

  auto parse_int = [](std::string_view t, long long& out) {
    const auto* end = t.data() + t.size();
    auto res = std::from_chars(t.data(), end, out);
    return res.ec == std::errc() && res.ptr == end;
  };

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    long long num = 0, den = 0;
    if (!parse_int(trim(s.substr(0, slash)), num) || !parse_int(trim(s.substr(slash + 1)), den) ||
        (den != 1 && den != 2))
      throw std::invalid_argument("spin: expected the form n/2");
    const long long two_j = den == 2 ? num : 2 * num;
    if (two_j < 1 || two_j > 1000) throw std::invalid_argument("spin: out of range");
    return SpinLabel(static_cast<int>(two_j));
  }

  const std::string buf(s);
  char* endp = nullptr;
  const double v = std::strtod(buf.c_str(), &endp);
  if (endp != buf.c_str() + buf.size())
    throw std::invalid_argument("spin: expected n/2, an integer, or a half-integer decimal");
  const double two_v = 2.0 * v;
  const long long two_j = std::llround(two_v);
  if (std::abs(two_v - static_cast<double>(two_j)) > 2e-9 || two_j < 1 || two_j > 1000)
    throw std::invalid_argument("spin: value is not a half-integer >= 1/2");
  return SpinLabel(static_cast<int>(two_j));
}

}  // namespace spinscale
