#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "domkit/constructions.hpp"
#include "domkit/dom.hpp"
#include "domkit/finite.hpp"

namespace domkit::testing {

inline DomPtr finite_dom(std::size_t n) { return make_finite(trivial_dom(n)); }
inline DomPtr cuts_of(const Group& g) { return std::make_shared<CutDom>(CutEngine(g)); }
inline DomPtr tilde_of(const Group& g) { return std::make_shared<TildeDom>(CutEngine(g)); }
inline Group lex_qq() { return Group::lex({Group::rationals(), Group::rationals()}); }

inline Element parse(const Dom& d, const std::string& s) { return d.parse(s); }

// n * y with 0 * y = 0
inline Element times(const Dom& d, long n, const Element& y) {
    return n == 0 ? d.zero() : iterate(d, y, y, n, IterMode::ScaleN);
}

// The general identities every dom satisfies, numbered as in the standard list.
// Returns the number of the first violated identity for (w, x, y, z), or 0.
inline int first_failing_identity(const Dom& d, const Element& w, const Element& x, const Element& y,
                                  const Element& z) {
    const Element zero = d.zero(), delta = d.delta();
    auto hat = [&](const Element& a) { return d.width(a); };
    const Element xh = hat(x), yh = hat(y), zh = hat(z);
    const Element s = d.add(x, y), rs = d.radd(x, y);

    if (!d.le(zero, xh)) return 1;
    if (!d.le(zero, d.radd(zero, zero)) || !d.le(d.add(delta, delta), delta)) return 2;
    if (!d.le(s, rs)) return 3;
    if (!d.le(x, d.sub(s, y)) || !d.le(d.add(d.sub(x, y), y), x)) return 4;
    {
        Element r = d.sub(x, y);
        if (!d.le(d.add(y, r), x)) return 5;
        for (const Element* c : {&z, &w})
            if (d.le(d.add(y, *c), x) && !d.le(*c, r)) return 5;
    }
    if (!d.eq(d.add(d.sub(s, y), y), s)) return 6;
    if (!d.eq(d.sub(d.add(d.sub(x, y), y), y), d.sub(x, y))) return 6;
    if (!d.eq(d.add(x, xh), x) || !d.eq(d.sub(x, xh), x)) return 7;
    if (d.lt(xh, y) != d.lt(x, s)) return 8;
    if (!d.le(xh, d.abs(x))) return 9;
    if ((d.le(zero, d.sub(x, y)) && d.le(zero, d.sub(y, x))) != d.eq(x, y)) return 10;
    if (!d.le(d.add(x, d.radd(y, z)), d.radd(s, z))) return 11;
    if (!d.le(d.add(d.radd(x, z), d.radd(y, w)), d.radd(d.radd(s, z), w))) return 12;
    if (!d.le(d.add(d.sub(x, z), d.sub(y, w)), d.sub(s, d.add(z, w)))) return 12;
    if (!d.le(d.add(d.add(rs, z), w), d.radd(d.add(x, z), d.add(y, w)))) return 13;
    if (d.lt(s, d.radd(x, z)) && !d.le(y, z)) return 14;
    if (d.lt(s, rs) && !d.eq(xh, yh)) return 15;
    if (d.lt(x, zero) && d.lt(y, zero) && !d.lt(rs, zero)) return 16;
    if (d.lt(x, z) && d.lt(y, w) && !d.lt(rs, d.add(z, w))) return 17;
    if (d.lt(w, z) && d.lt(z, x) && !d.lt(zh, d.sub(x, w))) return 17;
    if (!d.eq(d.add(xh, xh), xh)) return 18;
    if (d.eq(d.add(x, x), x) && !d.eq(xh, d.abs(x))) return 19;
    if (!d.eq(hat(xh), xh)) return 20;
    {
        Element m = d.max(xh, yh);
        if (!d.eq(hat(s), m) || !d.eq(hat(rs), m)) return 21;
    }
    if (!d.le(rs, d.radd(s, xh)) || !d.le(rs, d.radd(s, yh))) return 22;
    if (d.lt(yh, xh) && !d.eq(d.radd(x, yh), x)) return 23;
    if (d.lt(x, y) && !d.le(d.radd(x, yh), y)) return 24;
    for (const Element* c : {&y, &z, &w}) {
        if (d.lt(x, *c) && d.lt(*c, d.radd(x, zero))) return 25;
        if (d.lt(d.add(x, delta), *c) && d.lt(*c, x)) return 25;
    }
    if (d.le(x, zh) && d.le(y, zh) && !d.le(s, zh)) return 26;
    if (d.lt(x, zh) && d.lt(y, zh) && !d.lt(rs, zh)) return 27;
    return 0;
}

struct IdentityFailure {
    int item = 0;
    std::string witness;
};

// Exhaustive on finite carriers, else `samples` seeded quadruples drawn from landmarks and samples.
inline IdentityFailure check_identities(const Dom& d, std::size_t samples, std::uint64_t seed) {
    auto fmt = [&](const Element& w, const Element& x, const Element& y, const Element& z) {
        return "w=" + d.format(w) + " x=" + d.format(x) + " y=" + d.format(y) + " z=" + d.format(z);
    };
    if (auto all = d.elements()) {
        const auto& u = *all;
        for (const auto& w : u)
            for (const auto& x : u)
                for (const auto& y : u)
                    for (const auto& z : u)
                        if (int k = first_failing_identity(d, w, x, y, z)) return {k, fmt(w, x, y, z)};
        return {};
    }
    auto u = test_universe(d, samples / 4 + 1, seed);
    std::mt19937_64 rng(seed + 1);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (std::size_t t = 0; t < samples; ++t) {
        const auto &w = u[pick(rng)], &x = u[pick(rng)], &y = u[pick(rng)], &z = u[pick(rng)];
        if (int k = first_failing_identity(d, w, x, y, z)) return {k, fmt(w, x, y, z)};
    }
    return {};
}

// The deduction inequality (x - (m+d)y) + (my - ky) <= x - (d+k)y.
inline Element deduction_lhs(const Dom& dom, const Element& x, const Element& y, long d, long k, long m) {
    Element a = iterate(dom, x, y, m + d, IterMode::SubN);
    Element b = dom.sub(times(dom, m, y), times(dom, k, y));
    return dom.add(a, b);
}
inline Element deduction_rhs(const Dom& dom, const Element& x, const Element& y, long d, long k) {
    return iterate(dom, x, y, d + k, IterMode::SubN);
}

}  // namespace domkit::testing
