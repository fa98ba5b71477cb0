#include "domkit/dom.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "domkit/error.hpp"

namespace domkit {

// ---------- base ----------

Element Dom::parse(const std::string& text) const { throw ParseError(name() + " has no element syntax for '" + text + "'"); }

Element Dom::sample(std::mt19937_64& rng) const {
    auto all = elements();
    if (!all || all->empty()) throw PreconditionError(name() + " cannot be sampled");
    std::uniform_int_distribution<std::size_t> pick(0, all->size() - 1);
    return (*all)[pick(rng)];
}

std::vector<Element> Dom::landmarks() const {
    if (auto all = elements()) return *all;
    return {zero(), delta()};
}

std::vector<Element> sort_unique(const Dom& d, std::vector<Element> xs) {
    std::sort(xs.begin(), xs.end(), [&](const Element& a, const Element& b) { return d.lt(a, b); });
    xs.erase(std::unique(xs.begin(), xs.end(), [&](const Element& a, const Element& b) { return d.eq(a, b); }), xs.end());
    return xs;
}

std::vector<Element> test_universe(const Dom& d, std::size_t samples, std::uint64_t seed) {
    if (auto all = d.elements()) return *all;
    std::vector<Element> xs = d.landmarks();
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) xs.push_back(d.sample(rng));
    return sort_unique(d, std::move(xs));
}

// ---------- groups ----------

Element GroupDom::add(const Element& x, const Element& y) const { return Element::group(g_.add(x.as_group(), y.as_group())); }

Element GroupDom::neg(const Element& x) const { return Element::group(g_.neg(x.as_group())); }

std::strong_ordering GroupDom::compare(const Element& x, const Element& y) const {
    return g_.cmp(x.as_group(), y.as_group());
}

bool GroupDom::contains(const Element& x) const { return x.is_group() && g_.contains(x.as_group()); }

std::vector<Element> GroupDom::landmarks() const {
    std::vector<Element> out{zero()};
    for (std::size_t i = 0; i < g_.dim(); ++i) {
        GroupElement e = g_.zero();
        e.coords[i] = 1;
        out.push_back(Element::group(e));
        out.push_back(Element::group(g_.neg(e)));
    }
    return out;
}

ShiftedGroupDom::ShiftedGroupDom(Group g, GroupElement shift) : GroupDom(std::move(g)), shift_(std::move(shift)) {
    g_.require(shift_);
}

std::string ShiftedGroupDom::name() const { return "shifted(" + g_.name() + "," + g_.format(shift_) + ")"; }

Element ShiftedGroupDom::neg(const Element& x) const { return Element::group(g_.add(g_.neg(x.as_group()), shift_)); }

// ---------- cuts ----------

Element CutDom::add(const Element& x, const Element& y) const { return Element::cut(e_.add(x.as_cut(), y.as_cut())); }

Element CutDom::neg(const Element& x) const { return Element::cut(e_.neg(x.as_cut())); }

std::strong_ordering CutDom::compare(const Element& x, const Element& y) const {
    return e_.compare(x.as_cut(), y.as_cut());
}

std::vector<Element> CutDom::landmarks() const {
    std::vector<Element> out;
    for (const auto& c : e_.landmarks()) out.push_back(Element::cut(c));
    const Group& g = e_.group();
    out.push_back(Element::cut(e_.minus(g.zero())));
    for (std::size_t i = 0; i < g.dim(); ++i) {
        GroupElement u = g.zero();
        u.coords[i] = 1;
        for (const auto& v : {u, g.neg(u)}) {
            out.push_back(Element::cut(e_.plus(v)));
            out.push_back(Element::cut(e_.minus(v)));
        }
    }
    return out;
}

Element TildeDom::add(const Element& x, const Element& y) const {
    const Group& g = e_.group();
    if (x.is_group() && y.is_group()) return Element::group(g.add(x.as_group(), y.as_group()));
    if (x.is_group()) return Element::cut(e_.shift(x.as_group(), y.as_cut()));
    if (y.is_group()) return Element::cut(e_.shift(y.as_group(), x.as_cut()));
    return Element::cut(e_.add(x.as_cut(), y.as_cut()));
}

Element TildeDom::neg(const Element& x) const {
    if (x.is_group()) return Element::group(e_.group().neg(x.as_group()));
    return Element::cut(e_.neg(x.as_cut()));
}

std::strong_ordering TildeDom::compare(const Element& x, const Element& y) const {
    if (x.is_group() && y.is_group()) return e_.group().cmp(x.as_group(), y.as_group());
    if (x.is_cut() && y.is_cut()) return e_.compare(x.as_cut(), y.as_cut());
    if (x.is_group()) return e_.member_below(x.as_group(), y.as_cut()) ? std::strong_ordering::less : std::strong_ordering::greater;
    return e_.member_below(y.as_group(), x.as_cut()) ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::string TildeDom::format(const Element& x) const {
    if (x.is_group()) return e_.group().format(x.as_group());
    return e_.format(x.as_cut());
}

namespace {

bool looks_like_cut(const std::string& t) {
    for (const char* p : {"cut(", "fill(", "edge("})
        if (t.rfind(p, 0) == 0) return true;
    return t == "-inf" || t == "+inf";
}

}  // namespace

Element TildeDom::parse(const std::string& text) const {
    if (looks_like_cut(text)) return Element::cut(e_.parse(text));
    return Element::group(e_.group().parse(text));
}

Element TildeDom::sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> coin(0, 9);
    if (coin(rng) < 3) return Element::group(e_.group().sample(rng));
    return Element::cut(e_.sample(rng));
}

std::vector<Element> TildeDom::landmarks() const {
    const Group& g = e_.group();
    std::vector<Element> out{zero()};
    for (std::size_t i = 0; i < g.dim(); ++i) {
        GroupElement u = g.zero();
        u.coords[i] = 1;
        out.push_back(Element::group(u));
        out.push_back(Element::group(g.neg(u)));
    }
    for (const auto& c : e_.landmarks()) out.push_back(Element::cut(c));
    out.push_back(Element::cut(e_.minus(g.zero())));
    return out;
}

// ---------- M^{>=a} ----------

SubDomGe::SubDomGe(DomPtr parent, Element a) : p_(std::move(parent)), a_(std::move(a)) {
    if (!p_->eq(p_->width(a_), a_)) throw PreconditionError(p_->format(a_) + " is not a width of " + p_->name());
}

std::string SubDomGe::name() const { return p_->name() + "{>=" + p_->format(a_) + "}"; }

bool SubDomGe::contains(const Element& x) const { return p_->contains(x) && p_->le(a_, p_->width(x)); }

Element SubDomGe::parse(const std::string& text) const {
    Element x = p_->parse(text);
    if (!contains(x)) throw TypeError(text + " is not in " + name());
    return x;
}

std::optional<std::vector<Element>> SubDomGe::elements() const {
    auto all = p_->elements();
    if (!all) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *all)
        if (contains(x)) out.push_back(x);
    return out;
}

std::vector<Element> SubDomGe::landmarks() const {
    std::vector<Element> out;
    for (const auto& x : p_->landmarks()) out.push_back(p_->add(x, a_));
    return sort_unique(*this, std::move(out));
}

// ---------- axioms ----------

std::string to_string(Axiom a) {
    switch (a) {
    case Axiom::Commutativity:
        return "commutativity";
    case Axiom::Associativity:
        return "associativity";
    case Axiom::Identity:
        return "identity";
    case Axiom::Involution:
        return "involution";
    case Axiom::Antitone:
        return "antitone";
    case Axiom::PA:
        return "PA";
    case Axiom::MA:
        return "MA";
    case Axiom::MB:
        return "MB";
    case Axiom::MCa:
        return "MC(a)";
    case Axiom::MCb:
        return "MC(b)";
    case Axiom::MCprime:
        return "MC'";
    }
    return "?";
}

std::vector<Axiom> predom_axioms() {
    return {Axiom::Commutativity, Axiom::Associativity, Axiom::Identity, Axiom::Involution, Axiom::Antitone, Axiom::PA};
}

std::vector<Axiom> dom_axioms() {
    auto v = predom_axioms();
    for (Axiom a : {Axiom::MA, Axiom::MB, Axiom::MCa, Axiom::MCb}) v.push_back(a);
    return v;
}

std::vector<Axiom> all_axioms() {
    auto v = dom_axioms();
    v.push_back(Axiom::MCprime);
    return v;
}

std::vector<Axiom> parse_axioms(const std::string& text) {
    static const std::map<std::string, std::vector<Axiom>> names = {
        {"dom", dom_axioms()},
        {"predom", predom_axioms()},
        {"all", all_axioms()},
        {"commutativity", {Axiom::Commutativity}},
        {"comm", {Axiom::Commutativity}},
        {"associativity", {Axiom::Associativity}},
        {"assoc", {Axiom::Associativity}},
        {"identity", {Axiom::Identity}},
        {"involution", {Axiom::Involution}},
        {"antitone", {Axiom::Antitone}},
        {"PA", {Axiom::PA}},
        {"MA", {Axiom::MA}},
        {"MB", {Axiom::MB}},
        {"MC", {Axiom::MCa, Axiom::MCb}},
        {"MC(a)", {Axiom::MCa}},
        {"MCa", {Axiom::MCa}},
        {"MC(b)", {Axiom::MCb}},
        {"MCb", {Axiom::MCb}},
        {"MC'", {Axiom::MCprime}},
        {"MCprime", {Axiom::MCprime}},
    };
    std::vector<Axiom> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        auto it = names.find(item);
        if (it == names.end()) throw ParseError("unknown axiom '" + item + "'");
        for (Axiom a : it->second)
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    if (out.empty()) throw ParseError("empty axiom list");
    std::sort(out.begin(), out.end());
    return out;
}

bool AxiomReport::ok() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

bool AxiomReport::passes(Axiom a) const {
    for (const auto& r : results)
        if (r.axiom == a) return r.pass;
    throw PreconditionError(to_string(a) + " was not checked");
}

std::vector<Axiom> AxiomReport::failures() const {
    std::vector<Axiom> out;
    for (const auto& r : results)
        if (!r.pass) out.push_back(r.axiom);
    return out;
}

std::string AxiomReport::to_text() const {
    std::string s;
    for (const auto& r : results) {
        s += to_string(r.axiom) + ": " + (r.pass ? "PASS" : "FAIL witness " + r.witness) + "\n";
    }
    return s;
}

namespace {

std::size_t arity(Axiom a) {
    switch (a) {
    case Axiom::MA:
        return 0;
    case Axiom::Identity:
    case Axiom::Involution:
    case Axiom::MB:
        return 1;
    case Axiom::Commutativity:
    case Axiom::Antitone:
    case Axiom::MCa:
    case Axiom::MCb:
        return 2;
    case Axiom::Associativity:
    case Axiom::PA:
    case Axiom::MCprime:
        return 3;
    }
    return 0;
}

bool holds(const Dom& d, Axiom a, const Element* v) {
    switch (a) {
    case Axiom::Commutativity:
        return d.eq(d.add(v[0], v[1]), d.add(v[1], v[0]));
    case Axiom::Associativity:
        return d.eq(d.add(d.add(v[0], v[1]), v[2]), d.add(v[0], d.add(v[1], v[2])));
    case Axiom::Identity:
        return d.eq(d.add(v[0], d.zero()), v[0]);
    case Axiom::Involution:
        return d.eq(d.neg(d.neg(v[0])), v[0]);
    case Axiom::Antitone:
        return !d.lt(v[0], v[1]) || d.lt(d.neg(v[1]), d.neg(v[0]));
    case Axiom::PA:
        return !d.lt(v[0], v[1]) || d.le(d.add(v[0], v[2]), d.add(v[1], v[2]));
    case Axiom::MA:
        return d.le(d.delta(), d.zero());
    case Axiom::MB:
        return d.le(d.zero(), d.abs(v[0]));
    case Axiom::MCa:
        return !d.lt(v[0], v[1]) || d.lt(d.sub(v[0], v[1]), d.zero());
    case Axiom::MCb:
        return !d.lt(d.sub(v[0], v[1]), d.zero()) || d.lt(v[0], v[1]);
    case Axiom::MCprime:
        return d.le(d.add(v[0], d.sub(v[1], v[2])), d.sub(d.add(v[0], v[1]), v[2]));
    }
    return true;
}

std::string witness_text(const Dom& d, Axiom a, const std::vector<Element>& v) {
    if (a == Axiom::MA) return "delta=" + d.format(d.delta());
    static const char* names[] = {"x", "y", "z"};
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += std::string(names[i]) + "=" + d.format(v[i]);
    }
    return s;
}

}  // namespace

AxiomReport check_axioms(const Dom& d, const std::vector<Axiom>& which, const CheckOptions& opt) {
    AxiomReport rep;
    auto all = d.elements();
    rep.exhaustive = all && all->size() <= opt.exhaustive_limit;
    std::vector<Element> u = rep.exhaustive ? *all : test_universe(d, opt.samples, opt.seed);
    std::vector<Element> marks;
    if (!rep.exhaustive) marks = sort_unique(d, d.landmarks());
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);

    for (Axiom a : which) {
        AxiomResult r{a, true, ""};
        std::size_t k = arity(a);
        std::vector<Element> v(k);
        std::optional<std::vector<std::size_t>> best;
        const std::vector<Element>* src = &u;
        auto try_tuple = [&](const std::vector<std::size_t>& idx) {
            for (std::size_t i = 0; i < k; ++i) v[i] = (*src)[idx[i]];
            if (holds(d, a, v.data())) return false;
            if (src == &u) {
                if (!best || idx < *best) best = idx;
            } else if (!best) {
                // landmark failures are translated to universe indices
                std::vector<std::size_t> ui;
                for (const auto& x : v) {
                    auto it = std::lower_bound(u.begin(), u.end(), x, [&](const Element& p, const Element& q) { return d.lt(p, q); });
                    ui.push_back(static_cast<std::size_t>(it - u.begin()));
                }
                best = ui;
            }
            return true;
        };
        if (k == 0) {
            if (!holds(d, a, nullptr)) {
                r.pass = false;
                r.witness = witness_text(d, a, {});
            }
            rep.results.push_back(r);
            continue;
        }
        if (rep.exhaustive) {
            std::vector<std::size_t> idx(k, 0);
            bool done = u.empty();
            while (!done) {
                if (try_tuple(idx)) break;
                std::size_t pos = k;
                while (pos > 0) {
                    --pos;
                    if (++idx[pos] < u.size()) break;
                    idx[pos] = 0;
                    if (pos == 0) done = true;
                }
            }
        } else {
            // every landmark tuple, then random tuples over the sampled universe
            src = &marks;
            std::size_t total = 1;
            for (std::size_t i = 0; i < k; ++i) total *= marks.size();
            if (total <= 200000) {
                std::vector<std::size_t> idx(k, 0);
                for (std::size_t t = 0; t < total && !best; ++t) {
                    std::size_t rem = t;
                    for (std::size_t i = k; i-- > 0;) {
                        idx[i] = rem % marks.size();
                        rem /= marks.size();
                    }
                    try_tuple(idx);
                }
            }
            src = &u;
            std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
            std::size_t draws = k == 1 ? u.size() : opt.samples;
            std::vector<std::size_t> idx(k);
            for (std::size_t t = 0; t < draws; ++t) {
                for (std::size_t i = 0; i < k; ++i) idx[i] = k == 1 ? t : pick(rng);
                try_tuple(idx);
            }
        }
        if (best) {
            r.pass = false;
            std::vector<Element> w;
            for (std::size_t i : *best) w.push_back(u.at(std::min(i, u.size() - 1)));
            r.witness = witness_text(d, a, w);
        }
        rep.results.push_back(r);
    }
    return rep;
}

// ---------- derived notions ----------

Element iterate(const Dom& d, const Element& x, const Element& y, long n, IterMode mode) {
    switch (mode) {
    case IterMode::SubN:
    case IterMode::AddN: {
        if (n < 0) throw PreconditionError("iteration count must be non-negative");
        Element r = x;
        for (long i = 0; i < n; ++i) r = mode == IterMode::SubN ? d.sub(r, y) : d.add(r, y);
        return r;
    }
    case IterMode::ScaleN: {
        if (n == 0) throw PreconditionError("scale needs n != 0");
        long m = n < 0 ? -n : n;
        Element r = x;
        for (long i = 1; i < m; ++i) r = d.add(r, x);
        return n < 0 ? d.neg(r) : r;
    }
    }
    return x;
}

std::string to_string(DomType t) {
    switch (t) {
    case DomType::First:
        return "first";
    case DomType::Second:
        return "second";
    case DomType::Third:
        return "third";
    }
    return "?";
}

DomType classify_type(const Dom& d) {
    Element z = d.zero();
    Element dl = d.delta();
    if (d.eq(dl, z)) return DomType::First;
    Element dd = d.add(dl, dl);
    if (d.lt(dd, dl)) return DomType::Second;
    if (d.eq(dd, dl) && d.lt(dl, z)) return DomType::Third;
    throw PreconditionError(d.name() + " is not a dom: delta=" + d.format(dl));
}

Element f_plus(const Dom& d, const Element& x) { return d.sub(d.add(x, d.delta()), d.delta()); }

Element f_minus(const Dom& d, const Element& x) { return d.add(d.sub(x, d.delta()), d.delta()); }

std::vector<Element> equiv_class(const Dom& d, const Element& x) {
    return sort_unique(d, {f_minus(d, x), f_plus(d, x)});
}

int multiplicity(const Dom& d, const Element& x) { return static_cast<int>(equiv_class(d, x).size()); }

bool equivalent(const Dom& d, const Element& x, const Element& y) { return d.eq(f_plus(d, x), f_plus(d, y)); }

Signature signature(const Dom& d, const Element& x) {
    Element a = d.width(x);
    Element dl = d.neg(a);
    if (d.eq(dl, a)) return Signature::Spade;
    if (d.lt(d.add(dl, dl), dl)) return Signature::Infinity;
    Element p = d.add(x, dl);
    Element m = d.radd(x, a);
    bool below = d.lt(p, x), above = d.lt(x, m);
    if (!below && above) return Signature::Minus;
    if (!below && !above) return Signature::Zero;
    if (below && !above) return Signature::Plus;
    throw PreconditionError("signature undefined: " + d.format(x) + " has x+delta < x < x-delta");
}

bool is_width(const Dom& d, const Element& x) { return d.eq(d.width(x), x); }

bool in_m0(const Dom& d, const Element& x) { return d.eq(d.width(x), d.zero()); }

std::vector<Element> widths(const Dom& d, const std::vector<Element>& universe) {
    std::vector<Element> out;
    for (const auto& x : universe) out.push_back(d.width(x));
    return sort_unique(d, std::move(out));
}

std::vector<Element> double_points(const Dom& d, const std::vector<Element>& universe) {
    if (classify_type(d) != DomType::Third) throw PreconditionError("D(M) needs a dom of the third type");
    std::vector<Element> out;
    for (const auto& x : universe)
        if (in_m0(d, x) && multiplicity(d, x) == 2) out.push_back(x);
    return sort_unique(d, std::move(out));
}

std::vector<Element> h_group(const Dom& d, const std::vector<Element>& universe) {
    std::vector<Element> out;
    for (const auto& x : double_points(d, universe)) out.push_back(f_plus(d, x));
    return sort_unique(d, std::move(out));
}

std::vector<Element> extensible_group(const Dom& d, const std::vector<Element>& universe) {
    switch (classify_type(d)) {
    case DomType::First:
        return {d.zero()};
    case DomType::Second: {
        std::vector<Element> out;
        for (const auto& x : universe)
            if (in_m0(d, x)) out.push_back(x);
        return sort_unique(d, std::move(out));
    }
    case DomType::Third:
        return h_group(d, universe);
    }
    return {};
}

AssociatedGroup associated_group(const DomPtr& d) {
    AssociatedGroup g;
    g.project = [d](const Element& x) { return f_plus(*d, x); };
    if (auto all = d->elements()) {
        std::vector<Element> reps;
        for (const auto& x : *all)
            if (in_m0(*d, x)) reps.push_back(f_plus(*d, x));
        reps = sort_unique(*d, std::move(reps));
        g.description = reps.size() == 1 ? "trivial group" : "finite group of order " + std::to_string(reps.size());
        g.elements = std::move(reps);
        return g;
    }
    if (auto c = std::dynamic_pointer_cast<const CutDom>(d)) {
        const Group& base = c->engine().group();
        if (base.is_discrete())
            g.description = base.name() + " (minus shifted: the inverse of x is -x - delta)";
        else
            g.description = "dense, contains " + base.name() + " (representable classes only)";
        return g;
    }
    if (auto t = std::dynamic_pointer_cast<const TildeDom>(d)) {
        g.description = t->engine().group().name();
        return g;
    }
    if (auto gd = std::dynamic_pointer_cast<const GroupDom>(d)) {
        g.description = gd->group().name();
        return g;
    }
    g.description = "(M/=)^{0} of " + d->name() + " on F+ representatives";
    return g;
}

bool is_proper(const Dom& d) {
    auto all = d.elements();
    if (!all) {
        if (auto s = d.structurally_proper()) return *s;
        throw PreconditionError("properness of " + d.name() + " is not decidable here");
    }
    std::vector<Element> m0;
    for (const auto& x : *all)
        if (in_m0(d, x)) m0.push_back(x);
    for (std::size_t i = 0; i < all->size(); ++i) {
        for (std::size_t j = i + 1; j < all->size(); ++j) {
            const Element& x = (*all)[i];
            const Element& y = (*all)[j];
            bool found = std::any_of(m0.begin(), m0.end(), [&](const Element& z) { return d.le(x, z) && d.le(z, y); });
            if (!found) return false;
        }
    }
    return true;
}

bool is_strongly_proper(const Dom& d) {
    auto all = d.elements();
    if (!all) {
        if (auto s = d.structurally_strongly_proper()) return *s;
        throw PreconditionError("strong properness of " + d.name() + " is not decidable here");
    }
    if (!is_proper(d)) return false;
    const Element z = d.zero();
    for (const auto& y : *all) {
        Element w = d.width(y);
        if (!d.lt(z, w)) continue;
        bool found = std::any_of(all->begin(), all->end(),
                                 [&](const Element& x) { return in_m0(d, x) && d.lt(z, x) && d.lt(x, w); });
        if (!found) return false;
    }
    return true;
}

Cut lambda_map(const CutDom& d, const Cut& a) {
    const CutEngine& e = d.engine();
    Element ea = Element::cut(a);
    if (!d.lt(d.zero(), d.width(ea))) throw PreconditionError(e.format(a) + " has width 0");
    if (!a.finite()) return a;
    // x <= [y] with y < a for some width-0 y iff the least member x- of the class of x lies below a
    auto below = [&](const GroupElement& x) { return d.lt(Element::cut(e.minus(x)), ea); };
    return e.identify(below, a.point);
}

// ---------- homomorphisms ----------

std::string HomReport::to_text(const Dom& source) const {
    std::string s = std::string("hom: ") + (ok ? "PASS" : "FAIL") + "\n";
    for (const auto& f : failures) s += "  " + f + "\n";
    s += std::string("injective: ") + (injective ? "yes" : "no") + "\n";
    s += "kernel:";
    for (const auto& k : kernel) s += " " + source.format(k);
    s += "\n";
    s += std::string("kernel convex: ") + (kernel_convex ? "yes" : "no") + "\n";
    return s;
}

namespace {

std::vector<Element> hom_universe(const HomCandidate& h, const CheckOptions& opt) {
    if (!h.universe.empty()) return sort_unique(*h.source, h.universe);
    return test_universe(*h.source, opt.samples, opt.seed);
}

}  // namespace

HomReport verify_hom(const HomCandidate& h, const CheckOptions& opt) {
    HomReport rep;
    const Dom& s = *h.source;
    const Dom& t = *h.target;
    std::vector<Element> u = hom_universe(h, opt);
    auto fail = [&](const std::string& law, const std::string& w) {
        rep.ok = false;
        if (rep.failures.size() < 8) rep.failures.push_back(law + ": " + w);
    };
    std::vector<Element> img;
    try {
        for (const auto& x : u) {
            Element fx = h.map(x);
            if (!t.contains(fx)) fail("image", "x=" + s.format(x));
            img.push_back(fx);
        }
    } catch (const Error& ex) {
        fail("map", ex.what());
        return rep;
    }
    auto image = [&](const Element& x) -> Element {
        auto it = std::lower_bound(u.begin(), u.end(), x, [&](const Element& p, const Element& q) { return s.lt(p, q); });
        if (it != u.end() && s.eq(*it, x)) return img[static_cast<std::size_t>(it - u.begin())];
        return h.map(x);
    };
    try {
        if (h.kind == HomKind::Dom && !t.eq(h.map(s.zero()), t.zero())) fail("zero", "f(0)=" + t.format(h.map(s.zero())));
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!t.eq(image(s.neg(u[i])), t.neg(img[i]))) fail("minus", "x=" + s.format(u[i]));
            if (t.eq(img[i], t.zero())) rep.kernel.push_back(u[i]);
        }
        bool full = u.size() * u.size() <= 1000000;
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> pick(0, u.empty() ? 0 : u.size() - 1);
        std::size_t total = full ? u.size() * u.size() : opt.samples * 10;
        for (std::size_t k = 0; k < total && !u.empty(); ++k) {
            std::size_t i = full ? k / u.size() : pick(rng);
            std::size_t j = full ? k % u.size() : pick(rng);
            const Element& x = u[i];
            const Element& y = u[j];
            std::string w = "x=" + s.format(x) + " y=" + s.format(y);
            if (!t.eq(image(s.add(x, y)), t.add(img[i], img[j]))) fail("plus", w);
            if (s.le(x, y) && !t.le(img[i], img[j])) fail("order", w);
            if (i != j && t.eq(img[i], img[j])) rep.injective = false;
        }
    } catch (const Error& ex) {
        fail("map", ex.what());
    }
    if (!rep.kernel.empty()) {
        const Element& lo = rep.kernel.front();
        const Element& hi = rep.kernel.back();
        for (const auto& x : u) {
            if (s.le(lo, x) && s.le(x, hi) && !t.eq(image(x), t.zero())) rep.kernel_convex = false;
        }
    }
    return rep;
}

std::vector<Element> kernel(const HomCandidate& h, const CheckOptions& opt) {
    std::vector<Element> out;
    for (const auto& x : hom_universe(h, opt))
        if (h.target->eq(h.map(x), h.target->zero())) out.push_back(x);
    return out;
}

}  // namespace domkit
