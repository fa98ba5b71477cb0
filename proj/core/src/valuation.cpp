#include "domkit/valuation.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "domkit/error.hpp"

namespace domkit {

bool Valuation::eq(const Element& x, const Element& y) const {
    Element a = value(x), b = value(y);
    return value_le(a, b) && value_le(b, a);
}

Valuation trivial_valuation(const DomPtr& d) {
    return Valuation{"trivial", d, [](const Element&) { return Element::index(0); },
                     [](const Element& a, const Element& b) { return a.as_index() <= b.as_index(); },
                     [](const Element&) { return std::string("-oo"); }};
}

Valuation two_valued_valuation(const DomPtr& d) {
    if (classify_type(*d) == DomType::Second) throw PreconditionError("the two-valued valuation needs a dom not of the second type");
    auto value = [d](const Element& x) {
        bool low = d->eq(x, d->zero()) || d->eq(x, d->delta());
        return Element::index(low ? 0 : 1);
    };
    return Valuation{"two-valued", d, value, [](const Element& a, const Element& b) { return a.as_index() <= b.as_index(); },
                     [](const Element& a) { return a.as_index() == 0 ? std::string("-oo") : std::string("1"); }};
}

Valuation width_valuation(const DomPtr& d) {
    return Valuation{"width", d, [d](const Element& x) { return d->width(x); },
                     [d](const Element& a, const Element& b) { return d->le(a, b); },
                     [d](const Element& a) { return d->format(a); }};
}

Valuation natural_valuation(const DomPtr& d, int max_doublings) {
    // a <= b iff |a| <= 2^k-fold |b| for some k; the fully doubled |b| is cached
    struct Cache {
        std::mutex m;
        std::map<Element, Element, StructuralLess> top;
    };
    auto cache = std::make_shared<Cache>();
    auto top = [d, max_doublings, cache](const Element& b) {
        {
            std::lock_guard<std::mutex> lock(cache->m);
            auto it = cache->top.find(b);
            if (it != cache->top.end()) return it->second;
        }
        Element r = b;
        for (int i = 0; i < max_doublings; ++i) {
            Element next = d->radd(r, r);
            if (d->eq(next, r)) break;
            r = next;
        }
        std::lock_guard<std::mutex> lock(cache->m);
        cache->top.emplace(b, r);
        return r;
    };
    auto below = [d, top](const Element& a, const Element& b) { return d->le(a, b) || d->le(a, top(b)); };
    return Valuation{"natural", d, [d](const Element& x) { return d->abs(x); }, below,
                     [d](const Element& a) { return "[" + d->format(a) + "]"; }};
}

namespace {

std::vector<Element> w_candidates(const Dom& d, const Element& x) {
    std::vector<Element> out{x, d.zero()};
    if (auto all = d.elements()) return *all;
    auto* cd = dynamic_cast<const CutDom*>(&d);
    if (!cd) throw PreconditionError("w valuation is not supported on " + d.name());
    const CutEngine& e = cd->engine();
    if (!x.is_cut() || !x.as_cut().finite()) return out;
    const Cut& c = x.as_cut();
    for (std::size_t l = 0; l < c.level; ++l) {
        Point q = c.point;
        q.resize(e.dim() - l, Real2());
        for (Side s : {Side::Minus, Side::Plus}) {
            try {
                out.push_back(Element::cut(e.node(l, q, s)));
            } catch (const Error&) {
            }
        }
    }
    return out;
}

}  // namespace

Valuation w_valuation(const DomPtr& d) {
    if (!d->is_finite() && !dynamic_cast<const CutDom*>(d.get()))
        throw PreconditionError("w valuation is not supported on " + d->name());
    struct Cache {
        std::mutex m;
        std::map<Element, Element, StructuralLess> w;
    };
    auto cache = std::make_shared<Cache>();
    auto compute = [d](const Element& x) {
        Element xw = d->width(x);
        std::optional<Element> best;
        for (const auto& y : w_candidates(*d, x)) {
            if (!d->eq(d->add(y, xw), x) && !d->eq(d->sub(y, xw), x)) continue;
            Element yw = d->width(y);
            if (!best || d->lt(yw, *best)) best = yw;
        }
        return *best;  // y = x always qualifies
    };
    auto value = [cache, compute](const Element& x) {
        {
            std::lock_guard<std::mutex> lock(cache->m);
            auto it = cache->w.find(x);
            if (it != cache->w.end()) return it->second;
        }
        Element r = compute(x);
        std::lock_guard<std::mutex> lock(cache->m);
        cache->w.emplace(x, r);
        return r;
    };
    return Valuation{"w", d, value, [d](const Element& a, const Element& b) { return d->le(a, b); },
                     [d](const Element& a) { return "(" + d->format(a) + ")-"; }};
}

std::string to_string(ValuationAxiom a) {
    switch (a) {
        case ValuationAxiom::V1: return "V1";
        case ValuationAxiom::V2: return "V2";
        case ValuationAxiom::V3: return "V3";
        case ValuationAxiom::V4: return "V4";
        case ValuationAxiom::Strong: return "strong";
    }
    return "?";
}

std::vector<ValuationAxiom> all_valuation_axioms() {
    return {ValuationAxiom::V1, ValuationAxiom::V2, ValuationAxiom::V3, ValuationAxiom::V4, ValuationAxiom::Strong};
}

bool ValuationReport::ok() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

bool ValuationReport::passes(ValuationAxiom a) const {
    for (const auto& r : results)
        if (r.axiom == a) return r.pass;
    return false;
}

std::string ValuationReport::to_text() const {
    std::ostringstream out;
    for (const auto& r : results) {
        out << to_string(r.axiom) << ": " << (r.pass ? "PASS" : "FAIL");
        if (!r.pass) out << " witness " << r.witness;
        out << "\n";
    }
    return out.str();
}

std::vector<Element> valuation_universe(const Dom& d, const CheckOptions& opt) {
    return test_universe(d, opt.samples, opt.seed);
}

namespace {

// All pairs when small, else landmark pairs plus seeded random pairs.
std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const std::vector<Element>& u, const CheckOptions& opt) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (u.size() * u.size() <= 250000) {
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) out.emplace_back(i, j);
        return out;
    }
    std::mt19937_64 rng(opt.seed ^ 0x5851f42d4c957f2dULL);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (std::size_t i = 0; i < 64 && i < u.size(); ++i)
        for (std::size_t j = 0; j < 64 && j < u.size(); ++j) out.emplace_back(i, j);
    for (std::size_t t = 0; t < opt.samples * 10; ++t) out.emplace_back(pick(rng), pick(rng));
    return out;
}

}  // namespace

ValuationReport check_valuation(const Valuation& v, const std::vector<ValuationAxiom>& which, const CheckOptions& opt) {
    const Dom& d = *v.source;
    auto u = valuation_universe(d, opt);
    auto ps = pairs_of(u, opt);
    ValuationReport rep;
    auto fx = [&](const Element& x) { return d.format(x); };
    for (ValuationAxiom a : which) {
        ValuationResult r{a, true, ""};
        switch (a) {
            case ValuationAxiom::V1:
                for (const auto& x : u)
                    if (!v.le(d.zero(), x)) {
                        r = {a, false, "x=" + fx(x)};
                        break;
                    }
                break;
            case ValuationAxiom::V2:
                for (const auto& x : u)
                    if (!v.eq(d.neg(x), x)) {
                        r = {a, false, "x=" + fx(x)};
                        break;
                    }
                break;
            case ValuationAxiom::V3:
            case ValuationAxiom::V4:
            case ValuationAxiom::Strong:
                for (auto [i, j] : ps) {
                    const Element& x = u[i];
                    const Element& y = u[j];
                    bool good = true;
                    if (a == ValuationAxiom::V4) {
                        good = !d.le(d.abs(x), d.abs(y)) || v.le(x, y);
                    } else {
                        Element s = d.add(x, y);
                        Element m = v.le(x, y) ? y : x;
                        good = a == ValuationAxiom::V3 ? v.le(s, m) : v.eq(s, m);
                    }
                    if (!good) {
                        r = {a, false, "x=" + fx(x) + " y=" + fx(y)};
                        break;
                    }
                }
                break;
        }
        rep.results.push_back(r);
    }
    return rep;
}

bool coarsening_of(const Valuation& fine, const Valuation& coarse, const CheckOptions& opt) {
    auto u = valuation_universe(*fine.source, opt);
    for (auto [i, j] : pairs_of(u, opt))
        if (fine.le(u[i], u[j]) && !coarse.le(u[i], u[j])) return false;
    return true;
}

std::vector<std::vector<Element>> value_partition(const Valuation& v, const std::vector<Element>& universe) {
    std::vector<std::vector<Element>> classes;
    for (const auto& x : universe) {
        bool placed = false;
        for (auto& c : classes)
            if (v.eq(c.front(), x)) {
                c.push_back(x);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({x});
    }
    std::stable_sort(classes.begin(), classes.end(),
                     [&](const auto& a, const auto& b) { return v.lt(a.front(), b.front()); });
    for (auto& c : classes) c = sort_unique(*v.source, std::move(c));
    return classes;
}

std::string partition_text(const Valuation& v, const std::vector<Element>& universe) {
    std::ostringstream out;
    auto classes = value_partition(v, universe);
    out << "classes: " << classes.size() << "\n";
    for (const auto& c : classes) {
        out << v.format_value(v.value(c.front())) << ":";
        for (const auto& x : c) out << " " << v.source->format(x);
        out << "\n";
    }
    return out.str();
}

}  // namespace domkit
