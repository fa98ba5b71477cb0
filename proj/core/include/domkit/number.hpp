#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace domkit {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational floor_rational(const Rational& q);

// a + b*sqrt(2) with a, b rational.
class Real2 {
public:
    Real2() = default;
    Real2(const Rational& a) : a_(a) {}
    Real2(long a) : a_(a) {}
    Real2(const Rational& a, const Rational& b) : a_(a), b_(b) {}

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt2_part() const { return b_; }
    bool is_rational() const { return sgn(b_) == 0; }

    int sign() const;
    Rational floor() const;

    Real2 operator-() const { return Real2(-a_, -b_); }
    Real2& operator+=(const Real2& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    Real2& operator-=(const Real2& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    friend Real2 operator+(Real2 x, const Real2& y) { return x += y; }
    friend Real2 operator-(Real2 x, const Real2& y) { return x -= y; }
    friend Real2 operator*(const Rational& k, const Real2& x) {
        return Real2(Rational(k * x.a_), Rational(k * x.b_));
    }

    friend bool operator==(const Real2& x, const Real2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const Real2& x, const Real2& y) {
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
               : s > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

private:
    Rational a_;
    Rational b_;
};

Real2 parse_real2(std::string_view text);
std::string to_string(const Real2& x);
std::ostream& operator<<(std::ostream& os, const Real2& x);

}  // namespace domkit
