#include "domkit/cut.hpp"

#include <algorithm>

#include "domkit/error.hpp"

namespace domkit {

std::string to_string(Signature s) {
    switch (s) {
    case Signature::Minus:
        return "-1";
    case Signature::Zero:
        return "0";
    case Signature::Plus:
        return "+1";
    case Signature::Infinity:
        return "inf";
    case Signature::Spade:
        return "spade";
    }
    return "?";
}

namespace {

struct Slot {
    int inf = 0;
    Real2 value;
};

int compare_slots(const Slot& a, const Slot& b) {
    if (a.inf != b.inf) return a.inf < b.inf ? -1 : 1;
    if (a.inf != 0) return 0;
    return (a.value - b.value).sign();
}

Slot cut_slot(const Cut& c, std::size_t i) {
    switch (c.kind) {
    case Cut::Kind::NegInf:
        return {-1, {}};
    case Cut::Kind::PosInf:
        return {1, {}};
    case Cut::Kind::Node:
        break;
    }
    if (i < c.point.size()) return {0, c.point[i]};
    return {static_cast<int>(c.side), {}};
}

std::strong_ordering to_ordering(int c) {
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Side flip(Side s) { return static_cast<Side>(-static_cast<int>(s)); }

std::string format_point(const Point& p) {
    if (p.size() == 1) return to_string(p[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += to_string(p[i]);
    }
    return s + ")";
}

Point parse_point(const std::string& text) {
    Point p;
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw ParseError("unbalanced point '" + text + "'");
        std::string body = text.substr(1, text.size() - 2);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ',') {
                p.push_back(parse_real2(body.substr(start, i - start)));
                start = i + 1;
            }
        }
    } else {
        p.push_back(parse_real2(text));
    }
    return p;
}

std::vector<long> approximation_denominators(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Integers:
        return {1};
    case AtomKind::Rationals:
        return {1, 7, 997};
    case AtomKind::Localized: {
        long p = static_cast<long>(a.p);
        return {1, 3 * p + 1, 500 * p + 1};
    }
    }
    return {1};
}

}  // namespace

CutEngine::CutEngine(Group g, AnchorField field) : g_(std::move(g)), field_(field) {}

bool CutEngine::anchor_allowed(const Real2& x) const { return field_ == AnchorField::QSqrt2 || x.is_rational(); }

Point CutEngine::pad(const Point& p) const {
    Point r = p;
    r.resize(dim(), Real2());
    return r;
}

Point CutEngine::truncate(const Point& p, std::size_t len) const { return Point(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(len)); }

Point CutEngine::unit_step(std::size_t len, long k) const {
    Point e(len, Real2());
    e.back() = Real2(k);
    return e;
}

Cut CutEngine::node(std::size_t level, Point point, Side side) const {
    if (level >= dim()) throw PreconditionError("level " + std::to_string(level) + " out of range for " + g_.name());
    std::size_t len = dim() - level;
    if (point.size() != len)
        throw TypeError("level-" + std::to_string(level) + " cut over " + g_.name() + " needs " + std::to_string(len) +
                        " coordinates");
    for (std::size_t i = 0; i + 1 < len; ++i) {
        if (!g_.atom(i).contains(point[i]))
            throw TypeError("coordinate " + to_string(point[i]) + " is not in " + g_.atom(i).name());
    }
    const Atom& at = g_.atom(len - 1);
    const Real2& x = point.back();
    if (!anchor_allowed(x)) throw TypeError("anchor " + to_string(x) + " outside the anchor field");
    if (side == Side::Filled) {
        if (!at.dense()) throw TypeError("filled cut over discrete component " + at.name());
        if (at.contains(x)) throw TypeError("filled anchor " + to_string(x) + " lies in " + at.name());
    } else if (!at.contains(x)) {
        throw TypeError("anchor " + to_string(x) + " is not in " + at.name());
    }
    if (!at.dense() && side == Side::Minus) {
        point.back() -= Real2(1);
        side = Side::Plus;
    }
    return Cut{Cut::Kind::Node, level, std::move(point), side};
}

Cut CutEngine::plus(const GroupElement& g) const {
    g_.require(g);
    return node(0, to_point(g), Side::Plus);
}

Cut CutEngine::minus(const GroupElement& g) const {
    g_.require(g);
    return node(0, to_point(g), Side::Minus);
}

Cut CutEngine::filled(const Point& point) const { return node(dim() - point.size(), point, Side::Filled); }

Cut CutEngine::edge(std::size_t level, const GroupElement& prefix, Side side) const {
    return node(level, to_point(prefix), side);
}

Cut CutEngine::width_edge(std::size_t level) const { return node(level, Point(dim() - level, Real2()), Side::Plus); }

bool CutEngine::member_below(const GroupElement& g, const Cut& c) const {
    for (std::size_t i = 0; i <= dim(); ++i) {
        Slot gs{0, i < dim() ? Real2(g.coords.at(i)) : Real2()};
        int r = compare_slots(gs, cut_slot(c, i));
        if (r != 0) return r < 0;
    }
    return false;
}

bool CutEngine::member_above(const GroupElement& g, const Cut& c) const {
    for (std::size_t i = 0; i <= dim(); ++i) {
        Slot gs{0, i < dim() ? Real2(g.coords.at(i)) : Real2()};
        int r = compare_slots(gs, cut_slot(c, i));
        if (r != 0) return r > 0;
    }
    return false;
}

std::strong_ordering CutEngine::compare(const Cut& a, const Cut& b) const {
    for (std::size_t i = 0; i <= dim(); ++i) {
        int r = compare_slots(cut_slot(a, i), cut_slot(b, i));
        if (r != 0) return to_ordering(r);
    }
    return std::strong_ordering::equal;
}

Cut CutEngine::neg(const Cut& c) const {
    switch (c.kind) {
    case Cut::Kind::NegInf:
        return Cut::pos_inf();
    case Cut::Kind::PosInf:
        return Cut::neg_inf();
    case Cut::Kind::Node:
        break;
    }
    return node(c.level, g_.neg_point(c.point), flip(c.side));
}

Cut CutEngine::shift(const GroupElement& g, const Cut& c) const {
    if (!c.finite()) return c;
    return node(c.level, g_.add_points(c.point, truncate(to_point(g), c.point.size())), c.side);
}

Cut CutEngine::add(const Cut& a, const Cut& b) const {
    if (a.kind == Cut::Kind::NegInf || b.kind == Cut::Kind::NegInf) return Cut::neg_inf();
    if (a.kind == Cut::Kind::PosInf || b.kind == Cut::Kind::PosInf) return Cut::pos_inf();
    const Cut& hi = a.level >= b.level ? a : b;
    const Cut& lo = a.level >= b.level ? b : a;
    std::size_t len = hi.point.size();
    Point sum = g_.add_points(hi.point, truncate(lo.point, len));
    if (hi.level > lo.level) return node(hi.level, std::move(sum), hi.side);
    Side s;
    if (hi.side == Side::Filled && lo.side == Side::Filled) {
        s = g_.atom(len - 1).contains(sum.back()) ? Side::Minus : Side::Filled;
    } else if (hi.side == Side::Filled || lo.side == Side::Filled) {
        s = Side::Filled;
    } else if (hi.side == Side::Plus && lo.side == Side::Plus) {
        s = Side::Plus;
    } else {
        s = Side::Minus;
    }
    return node(hi.level, std::move(sum), s);
}

Cut CutEngine::radd(const Cut& a, const Cut& b) const {
    if (a.kind == Cut::Kind::PosInf || b.kind == Cut::Kind::PosInf) return Cut::pos_inf();
    if (a.kind == Cut::Kind::NegInf || b.kind == Cut::Kind::NegInf) return Cut::neg_inf();
    const Cut& hi = a.level >= b.level ? a : b;
    const Cut& lo = a.level >= b.level ? b : a;
    std::size_t len = hi.point.size();
    Point sum = g_.add_points(hi.point, truncate(lo.point, len));
    if (hi.level > lo.level) return node(hi.level, std::move(sum), hi.side);
    Side s;
    if (hi.side == Side::Filled && lo.side == Side::Filled) {
        s = g_.atom(len - 1).contains(sum.back()) ? Side::Plus : Side::Filled;
    } else if (hi.side == Side::Filled || lo.side == Side::Filled) {
        s = Side::Filled;
    } else if (hi.side == Side::Minus && lo.side == Side::Minus) {
        s = Side::Minus;
    } else {
        s = Side::Plus;
        if (hi.side == Side::Plus && lo.side == Side::Plus && !g_.atom(len - 1).dense())
            sum = g_.add_points(sum, unit_step(len, 1));
    }
    return node(hi.level, std::move(sum), s);
}

Cut CutEngine::diff(DiffMode mode, const Cut& a, const Cut& b) const {
    return mode == DiffMode::Right ? radd(a, neg(b)) : add(a, neg(b));
}

Cut CutEngine::width(const Cut& c) const {
    if (!c.finite()) throw PreconditionError("width of an infinite cut is not defined");
    return width_edge(c.level);
}

std::size_t CutEngine::invariance_level(const Cut& c) const {
    if (!c.finite()) throw PreconditionError("invariance level of an infinite cut is not defined");
    return c.level;
}

Cut CutEngine::project_cut(const Cut& c, std::size_t k) const {
    if (!c.finite()) return c;
    if (c.level < k) throw PreconditionError("H_" + std::to_string(k) + " is not contained in the invariance group");
    return Cut{Cut::Kind::Node, c.level - k, c.point, c.side};
}

Signature CutEngine::signature(const Cut& c) const {
    if (!c.finite()) throw PreconditionError("signature of an infinite cut is not defined here");
    if (!g_.atom(c.point.size() - 1).dense()) return Signature::Infinity;
    switch (c.side) {
    case Side::Minus:
        return Signature::Minus;
    case Side::Filled:
        return Signature::Zero;
    case Side::Plus:
        return Signature::Plus;
    }
    return Signature::Zero;
}

Cut CutEngine::induced_cut(const Point& x) const {
    if (x.size() != dim()) throw TypeError("witness needs " + std::to_string(dim()) + " coordinates");
    for (std::size_t i = 0; i < dim(); ++i) {
        const Atom& at = g_.atom(i);
        const Real2& xi = x[i];
        if (at.kind == AtomKind::Localized && !xi.is_rational())
            throw TypeError("witness coordinate " + to_string(xi) + " is outside Q");
        if (at.contains(xi)) continue;
        if (!at.dense())
            throw DensityError("coordinate " + to_string(xi) + " is not approximable in " + at.name());
        if (!anchor_allowed(xi)) throw TypeError("witness outside the anchor field");
        return node(dim() - 1 - i, truncate(x, i + 1), Side::Filled);
    }
    throw PreconditionError("witness lies in the group and fills no cut");
}

bool CutEngine::fills(const Point& x, const Cut& c) const { return induced_cut(x) == c; }

GroupElement CutEngine::cofinal_chain(const Cut& b, const mpz_class& n) const {
    GroupElement g = g_.zero();
    if (b.kind == Cut::Kind::PosInf) {
        g.coords[0] = Rational(n);
        return g;
    }
    if (!b.finite()) throw PreconditionError("the lower set of -inf is empty");
    std::size_t len = b.point.size();
    for (std::size_t i = 0; i + 1 < len; ++i) g.coords[i] = b.point[i].rational_part();
    const Atom& at = g_.atom(len - 1);
    mpz_class den = n;
    if (at.kind == AtomKind::Localized) den = n * static_cast<unsigned long>(at.p) + 1;
    switch (b.side) {
    case Side::Plus:
        g.coords[len - 1] = b.anchor().rational_part();
        if (len < dim()) g.coords[len] = Rational(n);
        break;
    case Side::Minus:
        g.coords[len - 1] = b.anchor().rational_part() - Rational(1, 1) / Rational(den);
        break;
    case Side::Filled: {
        Real2 scaled = Rational(den) * b.anchor();
        g.coords[len - 1] = scaled.floor() / Rational(den);
        break;
    }
    }
    return g;
}

std::vector<Cut> CutEngine::candidates_near(const Point& hint) const {
    std::vector<Cut> out{Cut::neg_inf(), Cut::pos_inf()};
    Point t = pad(hint);
    for (std::size_t l = 0; l < dim(); ++l) {
        Point p = truncate(t, dim() - l);
        bool discrete = !g_.atom(p.size() - 1).dense();
        if (discrete) p.back() = Real2(p.back().floor());
        for (long d : {-1L, 0L, 1L}) {
            if (d != 0 && !discrete) continue;
            Point q = p;
            q.back() += Real2(d);
            for (Side s : {Side::Minus, Side::Filled, Side::Plus}) {
                try {
                    out.push_back(node(l, q, s));
                } catch (const Error&) {
                }
            }
        }
    }
    return out;
}

std::vector<GroupElement> CutEngine::probes_near(const Point& hint) const {
    std::vector<GroupElement> tests;
    Point t = pad(hint);
    const Rational big(1000000);
    for (std::size_t i = 0; i < dim(); ++i) {
        bool prefix_ok = true;
        for (std::size_t j = 0; j < i; ++j) prefix_ok = prefix_ok && g_.atom(j).contains(t[j]);
        if (!prefix_ok) break;
        std::vector<Rational> values;
        const Atom& at = g_.atom(i);
        if (at.contains(t[i])) {
            const Rational& v = t[i].rational_part();
            values.push_back(v);
            values.push_back(v - 1);
            values.push_back(v + 1);
        }
        for (long den : approximation_denominators(at)) {
            Rational lo = (Rational(den) * t[i]).floor() / Rational(den);
            values.push_back(lo);
            values.push_back(lo + Rational(1, den));
            values.push_back(lo - Rational(1, den));
        }
        for (const auto& v : values) {
            for (const Rational& tail : {Rational(-big), Rational(0), big}) {
                GroupElement z = g_.zero();
                for (std::size_t j = 0; j < i; ++j) z.coords[j] = t[j].rational_part();
                z.coords[i] = v;
                for (std::size_t j = i + 1; j < dim(); ++j) z.coords[j] = tail;
                if (g_.contains(z)) tests.push_back(z);
            }
        }
    }
    return tests;
}

Cut CutEngine::pick(const std::vector<Cut>& candidates, const std::vector<GroupElement>& tests,
                    const std::vector<bool>& inside) const {
    std::optional<Cut> found;
    for (const auto& cand : candidates) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < tests.size(); ++i) ok = member_below(tests[i], cand) == inside[i];
        if (!ok) continue;
        if (found && !(*found == cand)) throw OracleError("cut not determined: " + format(*found) + " vs " + format(cand));
        found = cand;
    }
    if (!found) throw OracleError("no representable cut matches the membership data");
    return *found;
}

Cut CutEngine::identify(const std::function<bool(const GroupElement&)>& below, const Point& hint) const {
    std::vector<GroupElement> tests = probes_near(hint);
    GroupElement up = g_.zero(), down = g_.zero();
    up.coords[0] = Rational(1000000);
    down.coords[0] = Rational(-1000000);
    tests.push_back(up);
    tests.push_back(down);
    std::vector<bool> inside;
    for (const auto& z : tests) inside.push_back(below(z));
    return pick(candidates_near(hint), tests, inside);
}

Cut CutEngine::oracle_sum(const Cut& a, const Cut& b) const {
    if (b.kind == Cut::Kind::NegInf || a.kind == Cut::Kind::NegInf) return Cut::neg_inf();

    const mpz_class n1("1000000000");
    const mpz_class n2("1000000000000000");
    GroupElement c1 = cofinal_chain(b, n1);
    GroupElement c2 = cofinal_chain(b, n2);
    Cut s1 = shift(c1, a);
    Cut s2 = shift(c2, a);

    std::vector<Cut> candidates{Cut::neg_inf(), Cut::pos_inf()};
    std::vector<GroupElement> tests;
    if (a.finite() && b.finite()) {
        Point t = g_.add_points(pad(a.point), pad(b.point));
        candidates = candidates_near(t);
        tests = probes_near(t);
    }
    GroupElement up = g_.zero(), down = g_.zero();
    up.coords[0] = Rational(1000000);
    down.coords[0] = Rational(-1000000);
    tests.push_back(up);
    tests.push_back(down);

    std::vector<bool> inside;
    for (const auto& z : tests) {
        bool m1 = member_below(z, s1);
        bool m2 = member_below(z, s2);
        if (m1 != m2) throw OracleError("shift chain not stable under refinement at " + g_.format(z));
        inside.push_back(m2);
    }
    try {
        return pick(candidates, tests, inside);
    } catch (const OracleError& e) {
        throw OracleError(std::string(e.what()) + " for " + format(a) + " + " + format(b));
    }
}

Cut CutEngine::oracle_radd(const Cut& a, const Cut& b) const { return neg(oracle_sum(neg(a), neg(b))); }

Cut CutEngine::sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> pct(0, 99);
    int roll = pct(rng);
    if (roll < 4) return Cut::neg_inf();
    if (roll < 8) return Cut::pos_inf();
    std::uniform_int_distribution<std::size_t> lev(0, dim() - 1);
    std::size_t level = lev(rng);
    std::size_t len = dim() - level;
    GroupElement g = g_.sample(rng);
    Point p = truncate(to_point(g), len);
    const Atom& at = g_.atom(len - 1);
    std::vector<Side> sides{Side::Minus, Side::Plus};
    bool can_fill = at.dense() && (at.kind == AtomKind::Localized || field_ == AnchorField::QSqrt2);
    if (can_fill) sides.push_back(Side::Filled);
    std::uniform_int_distribution<std::size_t> pick(0, sides.size() - 1);
    Side s = sides[pick(rng)];
    if (s == Side::Filled) {
        std::uniform_int_distribution<int> coin(0, 1);
        bool use_sqrt2 = field_ == AnchorField::QSqrt2 && (at.kind == AtomKind::Rationals || coin(rng) == 1);
        if (use_sqrt2) {
            static const Rational coeffs[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)};
            std::uniform_int_distribution<int> c(0, 3);
            p.back() = Real2(p.back().rational_part(), coeffs[c(rng)]);
        } else {
            std::uniform_int_distribution<int> num(-4, 4);
            long pp = static_cast<long>(at.p);
            Rational q(2 * num(rng) + 1, pp * (coin(rng) + 1));
            q.canonicalize();
            p.back() = Real2(q);
        }
    }
    return node(level, std::move(p), s);
}

std::vector<Cut> CutEngine::landmarks() const {
    std::vector<Cut> out{Cut::neg_inf(), Cut::pos_inf()};
    for (std::size_t l = 0; l < dim(); ++l) {
        Cut w = width_edge(l);
        out.push_back(w);
        out.push_back(neg(w));
    }
    std::size_t last = dim() - 1;
    const Atom& at = g_.atom(last);
    Point p(dim(), Real2());
    if (at.kind == AtomKind::Localized) {
        long pp = static_cast<long>(at.p);
        for (Rational q : {Rational(1, pp), Rational(1, pp * pp), Rational(-1, pp)}) {
            p.back() = Real2(q);
            out.push_back(node(0, p, Side::Filled));
        }
    } else if (at.kind == AtomKind::Rationals && field_ == AnchorField::QSqrt2) {
        p.back() = Real2(Rational(0), Rational(1));
        out.push_back(node(0, p, Side::Filled));
        p.back() = Real2(Rational(0), Rational(-1));
        out.push_back(node(0, p, Side::Filled));
    }
    if (g_.atom(0).kind == AtomKind::Rationals && field_ == AnchorField::QSqrt2 && dim() > 1) {
        out.push_back(node(dim() - 1, Point{Real2(Rational(0), Rational(1))}, Side::Filled));
    }
    return out;
}

std::string CutEngine::format(const Cut& c) const {
    switch (c.kind) {
    case Cut::Kind::NegInf:
        return "-inf";
    case Cut::Kind::PosInf:
        return "+inf";
    case Cut::Kind::Node:
        break;
    }
    if (c.side == Side::Filled) return "fill(" + format_point(c.point) + ")";
    char sign = c.side == Side::Plus ? '+' : '-';
    if (c.level == 0) return "cut(" + format_point(c.point) + ")" + sign;
    return "edge(" + std::to_string(c.level) + ")" + sign + format_point(c.point);
}

Cut CutEngine::parse(const std::string& text) const {
    if (text == "-inf") return Cut::neg_inf();
    if (text == "+inf") return Cut::pos_inf();
    auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
    if (starts("cut(")) {
        if (text.size() < 6) throw ParseError("malformed cut '" + text + "'");
        char sign = text.back();
        if (sign != '+' && sign != '-') throw ParseError("cut literal needs a side: '" + text + "'");
        if (text[text.size() - 2] != ')') throw ParseError("malformed cut '" + text + "'");
        Point p = parse_point(text.substr(4, text.size() - 6));
        if (p.size() != dim()) throw TypeError("cut(...) over " + g_.name() + " needs " + std::to_string(dim()) + " coordinates");
        return node(0, p, sign == '+' ? Side::Plus : Side::Minus);
    }
    if (starts("fill(")) {
        if (text.back() != ')') throw ParseError("malformed fill '" + text + "'");
        Point p = parse_point(text.substr(5, text.size() - 6));
        if (p.size() > dim()) throw TypeError("fill(...) has too many coordinates");
        return filled(p);
    }
    if (starts("edge(")) {
        auto close = text.find(')');
        if (close == std::string::npos || close + 2 > text.size()) throw ParseError("malformed edge '" + text + "'");
        std::string k = text.substr(5, close - 5);
        if (k.empty() || !std::all_of(k.begin(), k.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw ParseError("malformed edge level '" + k + "'");
        char sign = text[close + 1];
        if (sign != '+' && sign != '-') throw ParseError("edge literal needs a side: '" + text + "'");
        std::size_t level = std::stoul(k);
        Point p = parse_point(text.substr(close + 2));
        return node(level, p, sign == '+' ? Side::Plus : Side::Minus);
    }
    throw ParseError("unknown cut literal '" + text + "'");
}

}  // namespace domkit
