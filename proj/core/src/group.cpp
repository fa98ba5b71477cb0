#include "domkit/group.hpp"

#include <array>
#include <sstream>

#include "domkit/error.hpp"

namespace domkit {

namespace {

bool coprime_to(const mpz_class& den, unsigned long p) {
    return mpz_divisible_ui_p(den.get_mpz_t(), p) == 0;
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string join_names(const std::vector<Atom>& atoms, std::size_t from, std::size_t to) {
    if (to - from == 1) return atoms[from].name();
    std::string s = "lex(";
    for (std::size_t i = from; i < to; ++i) {
        if (i > from) s += ",";
        s += atoms[i].name();
    }
    return s + ")";
}

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

bool Atom::contains(const Rational& q) const {
    switch (kind) {
    case AtomKind::Integers:
        return q.get_den() == 1;
    case AtomKind::Rationals:
        return true;
    case AtomKind::Localized:
        return coprime_to(q.get_den(), p);
    }
    return false;
}

bool Atom::contains(const Real2& x) const { return x.is_rational() && contains(x.rational_part()); }

std::string Atom::name() const {
    switch (kind) {
    case AtomKind::Integers:
        return "Z";
    case AtomKind::Rationals:
        return "Q";
    case AtomKind::Localized:
        return "Zloc(" + std::to_string(p) + ")";
    }
    return "?";
}

Point to_point(const GroupElement& g) { return Point(g.coords.begin(), g.coords.end()); }

Rational Polynomial2::eval(const Rational& x, const Rational& y) const {
    Rational total = 0;
    for (const auto& [ij, c] : coeffs) {
        Rational term = c;
        for (int k = 0; k < ij.first; ++k) term *= x;
        for (int k = 0; k < ij.second; ++k) term *= y;
        total += term;
    }
    return total;
}

FactorSet FactorSet::zero(std::size_t fiber_dim) {
    FactorSet f;
    f.name = "0";
    f.rule = [fiber_dim](const std::vector<Rational>&, const std::vector<Rational>&) {
        return std::vector<Rational>(fiber_dim, Rational(0));
    };
    f.polynomial = Polynomial2{};
    return f;
}

FactorSet FactorSet::from_polynomial(std::string name, Polynomial2 poly) {
    FactorSet f;
    f.name = std::move(name);
    f.polynomial = poly;
    f.rule = [poly](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        return std::vector<Rational>{poly.eval(a.at(0), b.at(0))};
    };
    return f;
}

Group Group::integers() { return Group(std::make_shared<Rep>(Rep{{Atom{AtomKind::Integers, 0}}, 0, nullptr, "Z"})); }

Group Group::rationals() { return Group(std::make_shared<Rep>(Rep{{Atom{AtomKind::Rationals, 0}}, 0, nullptr, "Q"})); }

Group Group::localized(unsigned long p) {
    if (!is_prime(p)) throw PreconditionError("Zloc(" + std::to_string(p) + "): " + std::to_string(p) + " is not prime");
    Atom a{AtomKind::Localized, p};
    return Group(std::make_shared<Rep>(Rep{{a}, 0, nullptr, a.name()}));
}

Group Group::lex(const std::vector<Group>& parts) {
    std::vector<Atom> atoms;
    for (const auto& g : parts) {
        if (g.is_crossed()) throw PreconditionError("lex components must not be crossed products");
        atoms.insert(atoms.end(), g.atoms().begin(), g.atoms().end());
    }
    if (atoms.empty()) throw PreconditionError("lex needs at least one component");
    return Group(std::make_shared<Rep>(Rep{atoms, 0, nullptr, join_names(atoms, 0, atoms.size())}));
}

Group Group::crossed(const Group& base, const Group& fiber, FactorSet f) {
    if (base.is_crossed() || fiber.is_crossed())
        throw PreconditionError("crossed product components must not be crossed products");
    FactorSetReport rep = validate_factor_set(base, fiber, f);
    if (!rep.ok) throw PreconditionError("factor set violates " + rep.law + " at " + rep.witness);
    Rep r;
    r.atoms = base.atoms();
    r.atoms.insert(r.atoms.end(), fiber.atoms().begin(), fiber.atoms().end());
    r.base_dim = base.dim();
    r.name = "crossed(" + base.name() + "," + fiber.name() + "," + f.name + ")";
    r.twist = std::make_shared<const FactorSet>(std::move(f));
    return Group(std::make_shared<Rep>(std::move(r)));
}

std::vector<Rational> Group::twist_value(const std::vector<Rational>& c1, const std::vector<Rational>& c2) const {
    return rep_->twist->rule(c1, c2);
}

bool Group::contains(const GroupElement& a) const {
    if (a.coords.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!atom(i).contains(a.coords[i])) return false;
    return true;
}

void Group::require(const GroupElement& a) const {
    if (!contains(a)) throw TypeError("element " + format(a) + " is not in " + name());
}

GroupElement Group::zero() const { return GroupElement{std::vector<Rational>(dim(), Rational(0))}; }

GroupElement Group::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < dim(); ++i) r.coords[i] += b.coords.at(i);
    if (is_crossed()) {
        std::size_t bd = base_dim();
        std::vector<Rational> c1(a.coords.begin(), a.coords.begin() + bd);
        std::vector<Rational> c2(b.coords.begin(), b.coords.begin() + bd);
        auto t = twist_value(c1, c2);
        for (std::size_t i = bd; i < dim(); ++i) r.coords[i] += t.at(i - bd);
    }
    return r;
}

GroupElement Group::neg(const GroupElement& a) const {
    GroupElement r = a;
    for (auto& c : r.coords) c = -c;
    if (is_crossed()) {
        std::size_t bd = base_dim();
        std::vector<Rational> c(a.coords.begin(), a.coords.begin() + bd);
        std::vector<Rational> mc(r.coords.begin(), r.coords.begin() + bd);
        auto t = twist_value(c, mc);
        for (std::size_t i = bd; i < dim(); ++i) r.coords[i] -= t.at(i - bd);
    }
    return r;
}

std::strong_ordering Group::cmp(const GroupElement& a, const GroupElement& b) const {
    for (std::size_t i = 0; i < dim(); ++i) {
        int c = ::cmp(a.coords.at(i), b.coords.at(i));
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::optional<GroupElement> Group::is_discrete() const {
    if (atoms().back().dense()) return std::nullopt;
    GroupElement e = zero();
    e.coords.back() = 1;
    return e;
}

ConvexLadder Group::convex_ladder() const {
    ConvexLadder l;
    for (std::size_t k = 0; k <= dim(); ++k) l.levels.push_back(k);
    return l;
}

Group Group::quotient(std::size_t k) const {
    if (k >= dim()) throw PreconditionError("quotient level " + std::to_string(k) + " out of range for " + name());
    if (k == 0) return *this;
    std::size_t keep = dim() - k;
    Rep r;
    r.atoms.assign(atoms().begin(), atoms().begin() + keep);
    if (is_crossed() && keep > base_dim()) {
        auto parent = rep_->twist;
        std::size_t fiber_keep = keep - base_dim();
        FactorSet f;
        f.name = parent->name + "/H" + std::to_string(k);
        f.rule = [parent, fiber_keep](const std::vector<Rational>& x, const std::vector<Rational>& y) {
            auto v = parent->rule(x, y);
            v.resize(fiber_keep);
            return v;
        };
        r.base_dim = base_dim();
        r.name = "crossed(" + join_names(r.atoms, 0, base_dim()) + "," + join_names(r.atoms, base_dim(), keep) +
                 "," + f.name + ")";
        r.twist = std::make_shared<const FactorSet>(std::move(f));
    } else {
        r.name = join_names(r.atoms, 0, keep);
    }
    return Group(std::make_shared<Rep>(std::move(r)));
}

GroupElement Group::quotient_project(std::size_t k, const GroupElement& a) const {
    if (k >= dim()) throw PreconditionError("invalid ladder level " + std::to_string(k));
    GroupElement r;
    r.coords.assign(a.coords.begin(), a.coords.end() - static_cast<std::ptrdiff_t>(k));
    return r;
}

Point Group::add_points(const Point& a, const Point& b) const {
    std::size_t len = a.size();
    if (b.size() != len || len == 0 || len > dim()) throw PreconditionError("point length mismatch");
    Point r(len);
    for (std::size_t i = 0; i < len; ++i) r[i] = a[i] + b[i];
    if (is_crossed() && len > base_dim()) {
        std::size_t bd = base_dim();
        std::vector<Rational> c1, c2;
        for (std::size_t i = 0; i < bd; ++i) {
            c1.push_back(a[i].rational_part());
            c2.push_back(b[i].rational_part());
        }
        auto t = twist_value(c1, c2);
        for (std::size_t i = bd; i < len; ++i) r[i] += Real2(t.at(i - bd));
    }
    return r;
}

Point Group::neg_point(const Point& a) const {
    std::size_t len = a.size();
    Point r(len);
    for (std::size_t i = 0; i < len; ++i) r[i] = -a[i];
    if (is_crossed() && len > base_dim()) {
        std::size_t bd = base_dim();
        std::vector<Rational> c, mc;
        for (std::size_t i = 0; i < bd; ++i) {
            c.push_back(a[i].rational_part());
            mc.push_back(-a[i].rational_part());
        }
        auto t = twist_value(c, mc);
        for (std::size_t i = bd; i < len; ++i) r[i] -= Real2(t.at(i - bd));
    }
    return r;
}

GroupElement Group::sample(std::mt19937_64& rng) const {
    GroupElement g;
    for (const auto& a : atoms()) {
        std::uniform_int_distribution<int> num(-8, 8);
        std::uniform_int_distribution<int> pick(0, 3);
        long n = num(rng);
        long d = 1;
        switch (a.kind) {
        case AtomKind::Integers:
            n /= 2;
            break;
        case AtomKind::Rationals: {
            static const long dens[] = {1, 2, 3, 4};
            d = dens[pick(rng)];
            break;
        }
        case AtomKind::Localized: {
            long choices[] = {1, static_cast<long>(a.p) + 1, 2 * static_cast<long>(a.p) + 1, 1};
            d = choices[pick(rng)];
            break;
        }
        }
        Rational q(n, d);
        q.canonicalize();
        g.coords.push_back(q);
    }
    return g;
}

std::string Group::format(const GroupElement& a) const {
    if (a.coords.size() == 1) return to_string(a.coords[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) s += ",";
        s += to_string(a.coords[i]);
    }
    return s + ")";
}

GroupElement Group::parse(const std::string& text) const {
    std::string t = text;
    GroupElement g;
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw ParseError("unbalanced element '" + text + "'");
        for (const auto& part : split_top_level(t.substr(1, t.size() - 2))) g.coords.push_back(parse_rational(part));
    } else {
        g.coords.push_back(parse_rational(t));
    }
    if (g.coords.size() != dim())
        throw TypeError("element '" + text + "' has " + std::to_string(g.coords.size()) + " coordinates, " + name() +
                        " needs " + std::to_string(dim()));
    require(g);
    return g;
}

namespace {

using Mono3 = std::array<int, 3>;
using Poly3 = std::map<Mono3, Rational>;

Rational binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

// Adds sign * c * u^i * v^j where u, v are each a sum of the listed variables.
void add_term(Poly3& p, const Rational& c, const std::vector<int>& u, int i, const std::vector<int>& v, int j) {
    auto expand = [](const std::vector<int>& vars, int power) {
        std::map<Mono3, Rational> out;
        if (vars.size() == 1) {
            Mono3 m{0, 0, 0};
            m[vars[0]] = power;
            out[m] = 1;
        } else {
            for (int l = 0; l <= power; ++l) {
                Mono3 m{0, 0, 0};
                m[vars[0]] += l;
                m[vars[1]] += power - l;
                out[m] += binom(power, l);
            }
        }
        return out;
    };
    auto pu = expand(u, i);
    auto pv = expand(v, j);
    for (const auto& [m1, c1] : pu) {
        for (const auto& [m2, c2] : pv) {
            Mono3 m{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]};
            p[m] += c * c1 * c2;
        }
    }
}

FactorSetReport check_polynomial(const Polynomial2& poly) {
    for (const auto& [ij, c] : poly.coeffs) {
        if (sgn(c) == 0) continue;
        auto it = poly.coeffs.find({ij.second, ij.first});
        Rational other = it == poly.coeffs.end() ? Rational(0) : it->second;
        if (other != c)
            return {false, "symmetry", "coefficient of x^" + std::to_string(ij.first) + " y^" + std::to_string(ij.second)};
        if (ij.second == 0) return {false, "normalization", "constant-in-y term x^" + std::to_string(ij.first)};
    }
    // f(y,z) + f(x,y+z) - f(x,y) - f(x+y,z) == 0 with x=0, y=1, z=2
    Poly3 p;
    for (const auto& [ij, c] : poly.coeffs) {
        auto [i, j] = ij;
        add_term(p, c, {1}, i, {2}, j);
        add_term(p, c, {0}, i, {1, 2}, j);
        add_term(p, Rational(-c), {0}, i, {1}, j);
        add_term(p, Rational(-c), {0, 1}, i, {2}, j);
    }
    for (const auto& [m, c] : p) {
        if (sgn(c) != 0)
            return {false, "cocycle",
                    "monomial x^" + std::to_string(m[0]) + " y^" + std::to_string(m[1]) + " z^" + std::to_string(m[2])};
    }
    return {};
}

}  // namespace

FactorSetReport validate_factor_set(const Group& base, const Group& fiber, const FactorSet& f, std::size_t samples,
                                    std::uint64_t seed) {
    if (f.polynomial && base.dim() == 1 && fiber.dim() == 1) {
        auto rep = check_polynomial(*f.polynomial);
        if (!rep.ok) return rep;
    }
    std::mt19937_64 rng(seed);
    auto fmt = [&](const GroupElement& x) { return base.format(x); };
    auto val = [&](const GroupElement& x, const GroupElement& y) {
        GroupElement r{f.rule(x.coords, y.coords)};
        if (r.coords.size() != fiber.dim()) throw PreconditionError("factor set returns wrong arity");
        return r;
    };
    auto fadd = [&](const GroupElement& a, const GroupElement& b) { return fiber.add(a, b); };
    GroupElement z = base.zero();
    for (std::size_t s = 0; s < samples; ++s) {
        GroupElement x = base.sample(rng), y = base.sample(rng), w = base.sample(rng);
        GroupElement fxy = val(x, y);
        if (!fiber.contains(fxy)) return {false, "membership", "(" + fmt(x) + ", " + fmt(y) + ")"};
        if (val(y, x) != fxy) return {false, "symmetry", "(" + fmt(x) + ", " + fmt(y) + ")"};
        if (val(x, z) != fiber.zero() || val(z, x) != fiber.zero())
            return {false, "normalization", "(" + fmt(x) + ", 0)"};
        GroupElement lhs = fadd(val(y, w), val(x, base.add(y, w)));
        GroupElement rhs = fadd(fxy, val(base.add(x, y), w));
        if (lhs != rhs) return {false, "cocycle", "(" + fmt(x) + ", " + fmt(y) + ", " + fmt(w) + ")"};
    }
    return {};
}

FactorSet factor_set_of_section(const Group& extension, std::size_t fiber_dim,
                                std::function<GroupElement(const GroupElement&)> section) {
    Group base = extension.quotient(fiber_dim);
    FactorSet f;
    f.name = "ds";
    f.rule = [extension, base, fiber_dim, section](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        GroupElement gx{x}, gy{y};
        GroupElement sum = base.add(gx, gy);
        GroupElement d = extension.sub(extension.add(section(gx), section(gy)), section(sum));
        for (std::size_t i = 0; i + fiber_dim < d.coords.size(); ++i) {
            if (sgn(d.coords[i]) != 0) throw PreconditionError("section does not split the quotient map");
        }
        return std::vector<Rational>(d.coords.end() - static_cast<std::ptrdiff_t>(fiber_dim), d.coords.end());
    };
    return f;
}

}  // namespace domkit
