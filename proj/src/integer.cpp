#include "torinv/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace torinv {

namespace {

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();

void set_mpz(mpz_class& z, int64_t v)
{
  // mpz_class has no int64_t constructor on every platform; long is 64-bit here.
  static_assert(sizeof(long) == sizeof(int64_t));
  z = static_cast<long>(v);
}

} // namespace

Int Int::parse(std::string_view text)
{
  mpz_class z;
  if (z.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not an integer: " + std::string(text));
  }
  return Int(z);
}

void Int::assign(const mpz_class& z)
{
  if (z.fits_slong_p()) {
    v_ = z.get_si();
    big_.reset();
  } else {
    if (big_) {
      *big_ = z;
    } else {
      big_ = std::make_unique<mpz_class>(z);
    }
    v_ = 0;
  }
}

int Int::sign() const
{
  if (!big_) return (v_ > 0) - (v_ < 0);
  return sgn(*big_);
}

int64_t Int::to_int64() const
{
  if (big_) throw std::overflow_error("integer does not fit in 64 bits: " + str());
  return v_;
}

mpz_class Int::to_mpz() const
{
  if (big_) return *big_;
  mpz_class z;
  set_mpz(z, v_);
  return z;
}

std::string Int::str() const
{
  if (!big_) return std::to_string(v_);
  return big_->get_str();
}

Int Int::operator-() const
{
  if (!big_ && v_ != kMin) return Int(static_cast<long long>(-v_));
  return Int(mpz_class(-to_mpz()));
}

Int& Int::operator+=(const Int& o)
{
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_add_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  assign(to_mpz() + o.to_mpz());
  return *this;
}

Int& Int::operator-=(const Int& o)
{
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_sub_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  assign(to_mpz() - o.to_mpz());
  return *this;
}

Int& Int::operator*=(const Int& o)
{
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_mul_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  assign(to_mpz() * o.to_mpz());
  return *this;
}

void Int::add_mul(const Int& a, const Int& b)
{
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.v_, b.v_, &p) && !__builtin_add_overflow(v_, p, &r)) {
      v_ = r;
      return;
    }
  }
  assign(to_mpz() + a.to_mpz() * b.to_mpz());
}

void Int::sub_mul(const Int& a, const Int& b)
{
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.v_, b.v_, &p) && !__builtin_sub_overflow(v_, p, &r)) {
      v_ = r;
      return;
    }
  }
  assign(to_mpz() - a.to_mpz() * b.to_mpz());
}

int compare(const Int& a, const Int& b)
{
  if (!a.big_ && !b.big_) return (a.v_ > b.v_) - (a.v_ < b.v_);
  return cmp(a.to_mpz(), b.to_mpz());
}

std::ostream& operator<<(std::ostream& os, const Int& a)
{
  return os << a.str();
}

Int abs(const Int& a)
{
  return a.sign() < 0 ? -a : a;
}

bool abs_less(const Int& a, const Int& b)
{
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (x != kMin && y != kMin) return (x < 0 ? -x : x) < (y < 0 ? -y : y);
  }
  return mpz_cmpabs(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t()) < 0;
}

Int floor_div(const Int& a, const Int& b)
{
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (!(x == kMin && y == -1)) {
      int64_t q = x / y;
      if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
      return Int(static_cast<long long>(q));
    }
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Int(q);
}

Int mod(const Int& a, const Int& b)
{
  if (b.is_zero()) throw std::domain_error("modulus zero");
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (y != kMin && !(x == kMin && y == -1)) {
      int64_t m = y < 0 ? -y : y;
      int64_t r = x % m;
      if (r < 0) r += m;
      return Int(static_cast<long long>(r));
    }
  }
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Int(r);
}

Int divexact(const Int& a, const Int& b)
{
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (!(x == kMin && y == -1)) return Int(static_cast<long long>(x / y));
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Int(q);
}

bool divides(const Int& b, const Int& a)
{
  if (b.is_zero()) return a.is_zero();
  return mod(a, b).is_zero();
}

Int gcd(const Int& a, const Int& b)
{
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (x != kMin && y != kMin) {
      if (x < 0) x = -x;
      if (y < 0) y = -y;
      while (y != 0) {
        int64_t t = x % y;
        x = y;
        y = t;
      }
      return Int(static_cast<long long>(x));
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Int(g);
}

Int lcm(const Int& a, const Int& b)
{
  if (a.is_zero() || b.is_zero()) return Int(0);
  return abs(divexact(a, gcd(a, b)) * b);
}

Int gcdext(const Int& a, const Int& b, Int& s, Int& t)
{
  if (!a.is_zero() && divides(a, b)) {
    s = Int(a.sign());
    t = Int(0);
    return abs(a);
  }
  if (a.is_small() && b.is_small()) {
    int64_t x = a.to_int64(), y = b.to_int64();
    if (x != kMin && y != kMin) {
      // Iterative extended Euclid; cofactors are bounded by |a|, |b|.
      int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
      }
      if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
      }
      s = Int(static_cast<long long>(s0));
      t = Int(static_cast<long long>(t0));
      return Int(static_cast<long long>(r0));
    }
  }
  mpz_class g, ss, tt;
  mpz_gcdext(g.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), a.to_mpz().get_mpz_t(),
             b.to_mpz().get_mpz_t());
  s = Int(ss);
  t = Int(tt);
  return Int(g);
}

} // namespace torinv
