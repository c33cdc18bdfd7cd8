#pragma once

#include <cstdint>

#include "balnum/bignum.hpp"

namespace balnum {

// Exact element a + b*sqrt(2) of the ring Z[sqrt(2)]. All arithmetic and the
// sign test are pure integer operations; no rounding is involved anywhere.
class QuadInt {
 public:
  QuadInt() : a_(0), b_(0) {}
  QuadInt(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {}

  const BigInt& rational_part() const { return a_; }
  const BigInt& radical_part() const { return b_; }

  // a - b*sqrt(2); conjugation is multiplicative.
  QuadInt conjugate() const { return QuadInt(a_, -b_); }

  // -1, 0 or +1. Decided by comparing a^2 against 2*b^2 when a and b have
  // opposite signs; a^2 = 2*b^2 has no nonzero integer solutions, so the
  // result is always exact.
  int sign() const;

  QuadInt& operator+=(const QuadInt& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadInt& operator-=(const QuadInt& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadInt& operator*=(const QuadInt& o);

  friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
  friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
  friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
  friend QuadInt operator-(const QuadInt& x) {
    return QuadInt(-x.a_, -x.b_);
  }
  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  BigInt a_;
  BigInt b_;
};

// Binary exponentiation in Z[sqrt(2)].
QuadInt pow(const QuadInt& base, std::uint64_t e);

}  // namespace balnum
