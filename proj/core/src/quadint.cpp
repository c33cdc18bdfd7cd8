#include "balnum/quadint.hpp"

#include <cassert>

namespace balnum {

QuadInt& QuadInt::operator*=(const QuadInt& o) {
  // (a1 + b1*s)(a2 + b2*s) = a1*a2 + 2*b1*b2 + (a1*b2 + a2*b1)*s
  BigInt a = a_ * o.a_ + 2 * b_ * o.b_;
  BigInt b = a_ * o.b_ + o.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

int QuadInt::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| against |b|*sqrt(2), i.e. a^2 against 2*b^2.
  BigInt lhs = a_ * a_;
  BigInt rhs = b_ * b_;
  rhs <<= 1;
  const int c = cmp(lhs, rhs);
  assert(c != 0);
  return c > 0 ? sa : sb;
}

QuadInt pow(const QuadInt& base, std::uint64_t e) {
  QuadInt r(1, 0);
  if (e == 0) return r;
  int top = 63;
  while (top > 0 && !((e >> top) & 1)) --top;
  for (int i = top; i >= 0; --i) {
    r *= r;
    if ((e >> i) & 1) r *= base;
  }
  return r;
}

}  // namespace balnum
