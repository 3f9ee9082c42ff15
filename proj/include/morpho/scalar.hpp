#pragma once

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace morpho {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Raised when a point leaves the open set on which a field is defined, or
/// when an elimination pivot degenerates.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on inconsistent matrix shapes or invalid construction parameters.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated second-order Taylor polynomial a0 + a1 t + a2 t^2 with complex
/// coefficients. Seeding a coordinate as x + t and evaluating a rational
/// expression yields the exact first and second directional derivatives:
/// f' = a1 and f'' = 2 a2.
class Jet2 {
 public:
  Jet2() = default;
  Jet2(double v) : a0_(v) {}  // NOLINT(google-explicit-constructor)
  Jet2(cplx v) : a0_(v) {}    // NOLINT(google-explicit-constructor)
  Jet2(cplx a0, cplx a1, cplx a2) : a0_(a0), a1_(a1), a2_(a2) {}

  /// Coordinate seed x + dir * t.
  static Jet2 seed(cplx x, cplx dir) { return {x, dir, 0.0}; }

  const cplx& a0() const { return a0_; }
  const cplx& a1() const { return a1_; }
  const cplx& a2() const { return a2_; }

  cplx value() const { return a0_; }
  cplx d1() const { return a1_; }
  cplx d2() const { return 2.0 * a2_; }

  Jet2 inverse() const {
    const cplx inv = 1.0 / a0_;
    const cplx c = a1_ * inv;
    return {inv, -c * inv, (c * c - a2_ * inv) * inv};
  }

  Jet2& operator+=(const Jet2& o) {
    a0_ += o.a0_;
    a1_ += o.a1_;
    a2_ += o.a2_;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    a0_ -= o.a0_;
    a1_ -= o.a1_;
    a2_ -= o.a2_;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    const cplx b0 = a0_ * o.a0_;
    const cplx b1 = a0_ * o.a1_ + a1_ * o.a0_;
    const cplx b2 = a0_ * o.a2_ + a1_ * o.a1_ + a2_ * o.a0_;
    a0_ = b0;
    a1_ = b1;
    a2_ = b2;
    return *this;
  }
  Jet2& operator/=(const Jet2& o) { return *this *= o.inverse(); }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator-(const Jet2& a) { return {-a.a0_, -a.a1_, -a.a2_}; }
  friend Jet2 operator+(const Jet2& a) { return a; }

  friend Jet2 operator*(const cplx& s, const Jet2& a) { return {s * a.a0_, s * a.a1_, s * a.a2_}; }
  friend Jet2 operator*(const Jet2& a, const cplx& s) { return s * a; }
  friend Jet2 operator*(double s, const Jet2& a) { return cplx(s) * a; }
  friend Jet2 operator*(const Jet2& a, double s) { return cplx(s) * a; }
  friend Jet2 operator+(const cplx& s, Jet2 a) { return a += Jet2(s); }
  friend Jet2 operator+(Jet2 a, const cplx& s) { return a += Jet2(s); }
  friend Jet2 operator-(const cplx& s, const Jet2& a) { return Jet2(s) - a; }
  friend Jet2 operator-(Jet2 a, const cplx& s) { return a -= Jet2(s); }
  friend Jet2 operator+(double s, const Jet2& a) { return cplx(s) + a; }
  friend Jet2 operator+(const Jet2& a, double s) { return a + cplx(s); }
  friend Jet2 operator-(double s, const Jet2& a) { return cplx(s) - a; }
  friend Jet2 operator-(const Jet2& a, double s) { return a - cplx(s); }
  friend Jet2 operator/(const Jet2& a, const cplx& s) { return a * (1.0 / s); }
  friend Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
  friend Jet2 operator/(const cplx& s, const Jet2& a) { return s * a.inverse(); }
  friend Jet2 operator/(double s, const Jet2& a) { return cplx(s) * a.inverse(); }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.a0_ == b.a0_ && a.a1_ == b.a1_ && a.a2_ == b.a2_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet2& a) {
    return os << a.a0_ << " + " << a.a1_ << " t + " << a.a2_ << " t^2";
  }

 private:
  cplx a0_{0.0};
  cplx a1_{0.0};
  cplx a2_{0.0};
};

/// Value at t = 0; used as the pivot magnitude in generic elimination.
inline cplx lead(const cplx& v) { return v; }
inline cplx lead(const Jet2& v) { return v.a0(); }

template <class T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using JetVector = VecX<Jet2>;

}  // namespace morpho

namespace Eigen {

template <>
struct NumTraits<morpho::Jet2> : GenericNumTraits<morpho::Jet2> {
  using Real = morpho::Jet2;
  using NonInteger = morpho::Jet2;
  using Nested = morpho::Jet2;
  using Literal = morpho::Jet2;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 6,
    MulCost = 24
  };
  static inline Real epsilon() { return {NumTraits<double>::epsilon()}; }
  static inline Real dummy_precision() { return {1e-12}; }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen
