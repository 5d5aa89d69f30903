#pragma once

// Arbitrary precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger is promoted
// to a heap-allocated mpz_class and demoted again as soon as it fits. The
// integer linear algebra in this library is dominated by tiny entries, so
// the fast path carries almost all of the work while SNF coefficient growth
// stays exact.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace torinv {

class Int {
public:
  Int() = default;
  Int(int v) : v_(v) {}
  Int(long v) : v_(v) {}
  Int(long long v) : v_(static_cast<int64_t>(v)) {}
  explicit Int(const mpz_class& z) { assign(z); }

  Int(const Int& o) : v_(o.v_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
  Int(Int&&) noexcept = default;
  Int& operator=(const Int& o)
  {
    if (this != &o) {
      v_ = o.v_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Int& operator=(Int&&) noexcept = default;

  static Int parse(std::string_view text);

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && v_ == 0; }
  bool is_one() const { return !big_ && v_ == 1; }
  int sign() const;
  bool fits_int64() const { return !big_; }
  int64_t to_int64() const;
  mpz_class to_mpz() const;
  std::string str() const;

  Int operator-() const;
  Int& operator+=(const Int& o);
  Int& operator-=(const Int& o);
  Int& operator*=(const Int& o);

  friend Int operator+(Int a, const Int& b) { return a += b; }
  friend Int operator-(Int a, const Int& b) { return a -= b; }
  friend Int operator*(Int a, const Int& b) { return a *= b; }

  /// this += a * b, the inner kernel of every elimination loop.
  void add_mul(const Int& a, const Int& b);
  /// this -= a * b
  void sub_mul(const Int& a, const Int& b);

  friend int compare(const Int& a, const Int& b);
  friend bool operator==(const Int& a, const Int& b)
  {
    if (!a.big_ && !b.big_) return a.v_ == b.v_;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
  friend bool operator<(const Int& a, const Int& b) { return compare(a, b) < 0; }
  friend bool operator>(const Int& a, const Int& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Int& a, const Int& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Int& a, const Int& b) { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Int& a);

private:
  void assign(const mpz_class& z);

  int64_t v_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Int abs(const Int& a);
/// |a| < |b|, without allocating for small values.
bool abs_less(const Int& a, const Int& b);
/// Floor division: q = floor(a / b), b != 0.
Int floor_div(const Int& a, const Int& b);
/// Nonnegative remainder in [0, |b|).
Int mod(const Int& a, const Int& b);
/// Exact division, a must be a multiple of b.
Int divexact(const Int& a, const Int& b);
/// true when b divides a (b != 0).
bool divides(const Int& b, const Int& a);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
/// When |a| divides b the result has s = sign(a), t = 0.
Int gcdext(const Int& a, const Int& b, Int& s, Int& t);

} // namespace torinv
