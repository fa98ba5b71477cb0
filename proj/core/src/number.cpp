#include "domkit/number.hpp"

#include <cmath>
#include <ostream>

#include "domkit/error.hpp"

namespace domkit {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

void check_rational_syntax(std::string_view t) {
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < t.size() && is_digit(t[i])) ++i, ++digits;
    if (digits == 0) throw ParseError("malformed rational '" + std::string(t) + "'");
    if (i < t.size() && t[i] == '/') {
        ++i;
        digits = 0;
        while (i < t.size() && is_digit(t[i])) ++i, ++digits;
        if (digits == 0) throw ParseError("malformed rational '" + std::string(t) + "'");
    }
    if (i != t.size()) throw ParseError("malformed rational '" + std::string(t) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    check_rational_syntax(text);
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
    if (s.find('/') != std::string::npos && sgn(q.get_den()) == 0)
        throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational floor_rational(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

int Real2::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 2 b^2
    Rational lhs = a_ * a_;
    Rational rhs = 2 * b_ * b_;
    int c = cmp(lhs, rhs);
    return c > 0 ? sa : sb;
}

Rational Real2::floor() const {
    if (is_rational()) return floor_rational(a_);
    double approx = a_.get_d() + b_.get_d() * std::sqrt(2.0);
    Rational k(mpz_class(std::floor(approx)));
    while (Real2(k) > *this) k -= 1;
    while (Real2(Rational(k + 1)) <= *this) k += 1;
    return k;
}

Real2 parse_real2(std::string_view text) {
    std::string s(text);
    auto pos = s.find("sqrt2");
    if (pos == std::string::npos) return Real2(parse_rational(s));
    if (pos + 5 != s.size()) throw ParseError("malformed number '" + s + "'");
    // split "<a><sign><b>*sqrt2" | "<sign>sqrt2" | "<b>*sqrt2"
    std::string head = s.substr(0, pos);
    std::string coeff;
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
        std::size_t cut = std::string::npos;
        for (std::size_t i = head.size(); i-- > 1;) {
            if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
                cut = i;
                break;
            }
        }
        if (cut == std::string::npos) {
            coeff = head;
            head.clear();
        } else {
            coeff = head.substr(cut);
            head = head.substr(0, cut);
        }
    } else {
        std::size_t n = head.size();
        if (n > 0 && (head[n - 1] == '+' || head[n - 1] == '-')) {
            coeff = std::string(1, head[n - 1]) + "1";
            head.pop_back();
        } else if (n == 0) {
            coeff = "1";
        } else {
            throw ParseError("malformed number '" + s + "'");
        }
    }
    Rational a = head.empty() ? Rational(0) : parse_rational(head);
    Rational b = parse_rational(coeff);
    if (sgn(b) == 0) throw ParseError("zero sqrt2 coefficient in '" + s + "'");
    return Real2(a, b);
}

std::string to_string(const Real2& x) {
    if (x.is_rational()) return to_string(x.rational_part());
    const Rational& b = x.sqrt2_part();
    std::string out;
    if (sgn(x.rational_part()) != 0) out = to_string(x.rational_part());
    if (b == 1) {
        out += out.empty() ? "" : "+";
    } else if (b == -1) {
        out += "-";
    } else {
        if (sgn(b) > 0 && !out.empty()) out += "+";
        out += to_string(b) + "*";
    }
    return out + "sqrt2";
}

std::ostream& operator<<(std::ostream& os, const Real2& x) { return os << to_string(x); }

}  // namespace domkit
