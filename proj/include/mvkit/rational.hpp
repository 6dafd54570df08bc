#ifndef MVKIT_RATIONAL_HPP
#define MVKIT_RATIONAL_HPP

// Exact rational arithmetic. Every carrier value in the library is built
// from Rat or Int; there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <string>

#include "mvkit/error.hpp"

namespace mvkit {

using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by the underlying cpp_rational).
class Rat {
public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}
  Rat(const Int &n) : v_(n) {}
  Rat(const Int &n, const Int &d) {
    if (d == 0)
      fail(ErrorKind::ShapeMismatch, "rational with zero denominator");
    v_ = boost::multiprecision::cpp_rational(n, d);
  }

  Int num() const { return boost::multiprecision::numerator(v_); }
  Int den() const { return boost::multiprecision::denominator(v_); }

  bool is_integer() const { return den() == 1; }
  bool is_zero() const { return v_ == 0; }

  Rat operator+(const Rat &o) const { return Rat(v_ + o.v_); }
  Rat operator-(const Rat &o) const { return Rat(v_ - o.v_); }
  Rat operator*(const Rat &o) const { return Rat(v_ * o.v_); }
  Rat operator/(const Rat &o) const {
    if (o.v_ == 0)
      fail(ErrorKind::ShapeMismatch, "division by zero");
    return Rat(v_ / o.v_);
  }
  Rat operator-() const { return Rat(-v_); }

  bool operator==(const Rat &o) const { return v_ == o.v_; }
  bool operator!=(const Rat &o) const { return v_ != o.v_; }
  bool operator<(const Rat &o) const { return v_ < o.v_; }
  bool operator<=(const Rat &o) const { return v_ <= o.v_; }
  bool operator>(const Rat &o) const { return v_ > o.v_; }
  bool operator>=(const Rat &o) const { return v_ >= o.v_; }

  /// Largest integer <= this.
  Int floor() const {
    Int q = num() / den();
    if (num() < 0 && q * den() != num())
      --q;
    return q;
  }

  /// Smallest integer >= this.
  Int ceil() const {
    Int q = num() / den();
    if (num() > 0 && q * den() != num())
      ++q;
    return q;
  }

  std::string str() const {
    if (is_integer())
      return num().str();
    return num().str() + "/" + den().str();
  }

private:
  explicit Rat(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

inline Rat rat_min(const Rat &a, const Rat &b) { return a < b ? a : b; }
inline Rat rat_max(const Rat &a, const Rat &b) { return a < b ? b : a; }
inline Rat rat_abs(const Rat &a) { return a < Rat(0) ? -a : a; }

inline std::ostream &operator<<(std::ostream &os, const Rat &r) {
  return os << r.str();
}

} // namespace mvkit

#endif
