#include "domkit/constructions.hpp"

#include <algorithm>
#include <map>

#include "domkit/error.hpp"

namespace domkit {

namespace {

std::vector<Element> filtered(const Dom& d, const std::vector<Element>& xs) {
    std::vector<Element> out;
    for (const auto& x : xs)
        if (d.contains(x)) out.push_back(x);
    return sort_unique(d, std::move(out));
}

// "(a,b)" -> {"a", "b"}, splitting at the top-level comma.
std::pair<std::string, std::string> split_pair(const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw ParseError("expected a pair, got '" + text + "'");
    std::string body = text.substr(1, text.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) return {body.substr(0, i), body.substr(i + 1)};
    }
    throw ParseError("expected a pair, got '" + text + "'");
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

class DualDom : public Dom {
public:
    explicit DualDom(DomPtr p) : p_(std::move(p)) {}
    const DomPtr& parent() const { return p_; }

    std::string name() const override { return "dual(" + p_->name() + ")"; }
    Element zero() const override { return p_->delta(); }
    Element add(const Element& x, const Element& y) const override { return p_->radd(x, y); }
    Element neg(const Element& x) const override { return p_->neg(x); }
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(y, x); }
    bool contains(const Element& x) const override { return p_->contains(x); }
    std::string format(const Element& x) const override { return p_->format(x); }
    Element parse(const std::string& text) const override { return p_->parse(text); }
    std::optional<std::vector<Element>> elements() const override {
        auto xs = p_->elements();
        if (xs) std::reverse(xs->begin(), xs->end());
        return xs;
    }
    Element sample(std::mt19937_64& rng) const override { return p_->sample(rng); }
    std::vector<Element> landmarks() const override { return p_->landmarks(); }

private:
    DomPtr p_;
};

class InfinityDom : public Dom {
public:
    explicit InfinityDom(DomPtr p) : p_(std::move(p)) {}

    static Element bottom() { return Element::tagged(0, {}); }
    static Element top() { return Element::tagged(2, {}); }
    static Element inner(const Element& x) { return Element::tagged(1, {x}); }

    std::string name() const override { return p_->name() + "^oo"; }
    Element zero() const override { return inner(p_->zero()); }
    Element add(const Element& x, const Element& y) const override {
        if (x.tag() == 0 || y.tag() == 0) return bottom();
        if (x.tag() == 2 || y.tag() == 2) return top();
        return inner(p_->add(x.part(0), y.part(0)));
    }
    Element neg(const Element& x) const override {
        if (x.tag() == 0) return top();
        if (x.tag() == 2) return bottom();
        return inner(p_->neg(x.part(0)));
    }
    std::strong_ordering compare(const Element& x, const Element& y) const override {
        if (x.tag() != y.tag()) return x.tag() <=> y.tag();
        if (x.tag() != 1) return std::strong_ordering::equal;
        return p_->compare(x.part(0), y.part(0));
    }
    bool contains(const Element& x) const override {
        if (!x.is_tagged()) return false;
        if (x.tag() == 0 || x.tag() == 2) return x.as_tagged().parts.empty();
        return x.tag() == 1 && x.as_tagged().parts.size() == 1 && p_->contains(x.part(0));
    }
    std::string format(const Element& x) const override {
        if (x.tag() == 0) return "-oo";
        if (x.tag() == 2) return "+oo";
        return p_->format(x.part(0));
    }
    Element parse(const std::string& text) const override {
        if (text == "-oo") return bottom();
        if (text == "+oo") return top();
        return inner(p_->parse(text));
    }
    std::optional<std::vector<Element>> elements() const override {
        auto xs = p_->elements();
        if (!xs) return std::nullopt;
        std::vector<Element> out{bottom()};
        for (const auto& x : *xs) out.push_back(inner(x));
        out.push_back(top());
        return out;
    }
    Element sample(std::mt19937_64& rng) const override {
        std::uniform_int_distribution<int> coin(0, 19);
        int c = coin(rng);
        if (c == 0) return bottom();
        if (c == 1) return top();
        return inner(p_->sample(rng));
    }
    std::vector<Element> landmarks() const override {
        std::vector<Element> out{bottom(), top()};
        for (const auto& x : p_->landmarks()) out.push_back(inner(x));
        return out;
    }

private:
    DomPtr p_;
};

class ShiftDom : public Dom {
public:
    ShiftDom(DomPtr p, std::optional<Element> one, std::optional<Element> unit)
        : p_(std::move(p)), one_(std::move(one)), unit_(std::move(unit)) {}

    // The minimal positive element of this dom, when it is of the first type.
    const std::optional<Element>& unit() const { return unit_; }

    std::string name() const override { return p_->name() + "^s"; }
    Element zero() const override { return p_->zero(); }
    Element add(const Element& x, const Element& y) const override { return p_->add(x, y); }
    Element neg(const Element& x) const override {
        if (one_) return p_->sub(p_->neg(x), *one_);
        return p_->sub(p_->zero(), x);
    }
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(x, y); }
    bool contains(const Element& x) const override { return p_->contains(x); }
    std::string format(const Element& x) const override { return p_->format(x); }
    Element parse(const std::string& text) const override { return p_->parse(text); }
    std::optional<std::vector<Element>> elements() const override { return p_->elements(); }
    Element sample(std::mt19937_64& rng) const override { return p_->sample(rng); }
    std::vector<Element> landmarks() const override {
        auto out = p_->landmarks();
        if (one_) out.push_back(*one_);
        return out;
    }

private:
    DomPtr p_;
    std::optional<Element> one_;
    std::optional<Element> unit_;
};

std::optional<Element> find_one(const Dom& d) {
    if (auto* s = dynamic_cast<const ShiftDom*>(&d)) return s->unit();
    auto xs = d.elements();
    if (!xs) return std::nullopt;
    for (const auto& x : *xs)
        if (d.lt(d.zero(), x)) return x;
    return std::nullopt;
}

}  // namespace

// ---------- subsets ----------

SubsetDom::SubsetDom(DomPtr parent, Predicate member, std::string name)
    : p_(std::move(parent)), member_(std::move(member)), name_(std::move(name)) {
    if (!contains(p_->zero())) throw PreconditionError(name_ + " does not contain 0");
}

Element SubsetDom::parse(const std::string& text) const {
    Element x = p_->parse(text);
    if (!contains(x)) throw TypeError(text + " is not in " + name_);
    return x;
}

std::optional<std::vector<Element>> SubsetDom::elements() const {
    auto xs = p_->elements();
    if (!xs) return std::nullopt;
    return filtered(*this, *xs);
}

Element SubsetDom::sample(std::mt19937_64& rng) const {
    for (int i = 0; i < 64; ++i) {
        Element x = p_->sample(rng);
        if (member_(x)) return x;
    }
    return zero();
}

std::vector<Element> SubsetDom::landmarks() const { return filtered(*this, p_->landmarks()); }

// ---------- dual, infinities, shift ----------

DomPtr dual(const DomPtr& d) {
    if (auto* dd = dynamic_cast<const DualDom*>(d.get())) return dd->parent();
    return std::make_shared<DualDom>(d);
}

DomPtr infinity_extension(const DomPtr& d) { return std::make_shared<InfinityDom>(d); }

DomPtr shift(const DomPtr& d, std::optional<Element> one) {
    switch (classify_type(*d)) {
        case DomType::Third:
            return d;
        case DomType::Second:
            return std::make_shared<ShiftDom>(d, std::nullopt, d->radd(d->zero(), d->zero()));
        case DomType::First:
            break;
    }
    if (!one) one = find_one(*d);
    if (!one) throw PreconditionError("shift of " + d->name() + " needs its minimal positive element");
    if (!d->lt(d->zero(), *one)) throw PreconditionError(d->format(*one) + " is not positive");
    if (!d->eq(d->sub(*one, *one), d->zero())) throw PreconditionError(d->format(*one) + " - " + d->format(*one) + " is not 0");
    if (auto xs = d->elements())
        for (const auto& x : *xs)
            if (d->lt(d->zero(), x) && d->lt(x, *one)) throw PreconditionError(d->format(*one) + " is not the minimal positive element");
    return std::make_shared<ShiftDom>(d, one, std::nullopt);
}

// ---------- quotients ----------

QuotientDom::QuotientDom(DomPtr parent, std::function<Element(const Element&)> canon, std::string name)
    : p_(std::move(parent)), canon_(std::move(canon)), name_(std::move(name)) {}

bool QuotientDom::contains(const Element& x) const { return p_->contains(x) && p_->eq(canon_(x), x); }

Element QuotientDom::parse(const std::string& text) const {
    std::string t = trim(text);
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
    return canon_(p_->parse(t));
}

std::optional<std::vector<Element>> QuotientDom::elements() const {
    auto xs = p_->elements();
    if (!xs) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *xs) out.push_back(canon_(x));
    return sort_unique(*this, std::move(out));
}

std::vector<Element> QuotientDom::landmarks() const {
    std::vector<Element> out;
    for (const auto& x : p_->landmarks()) out.push_back(canon_(x));
    return sort_unique(*this, std::move(out));
}

QuotientResult quotient_by_subdom(const DomPtr& d, const std::vector<Element>& n) {
    auto xs = d->elements();
    if (!xs) throw PreconditionError("quotient by a sub-dom needs a finite carrier");
    const std::vector<Element>& all = *xs;
    const std::size_t size = all.size();
    auto pos = [&](const Element& x) {
        for (std::size_t i = 0; i < size; ++i)
            if (d->eq(all[i], x)) return i;
        throw PreconditionError(d->format(x) + " is not in " + d->name());
    };
    std::vector<bool> in_n(size, false);
    for (const auto& w : n) in_n[pos(w)] = true;
    if (!in_n[pos(d->zero())]) throw PreconditionError("N does not contain 0");
    std::size_t lo = size, hi = 0;
    for (std::size_t i = 0; i < size; ++i)
        if (in_n[i]) lo = std::min(lo, i), hi = std::max(hi, i);
    for (std::size_t i = lo; i <= hi; ++i)
        if (!in_n[i]) throw PreconditionError("N is not convex");
    for (std::size_t i = 0; i < size; ++i) {
        if (!in_n[i]) continue;
        if (!in_n[pos(d->neg(all[i]))]) throw PreconditionError("N is not symmetric");
        for (std::size_t j = 0; j < size; ++j)
            if (in_n[j] && !in_n[pos(d->add(all[i], all[j]))]) throw PreconditionError("N is not closed under +");
    }

    std::vector<std::vector<bool>> rel(size, std::vector<bool>(size, false));
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            bool low = false, high = false;
            for (std::size_t w = 0; w < size; ++w) {
                if (!in_n[w]) continue;
                low = low || d->le(d->add(all[y], all[w]), all[x]);
                high = high || d->le(all[x], d->radd(all[y], all[w]));
            }
            rel[x][y] = low && high;
        }
    std::vector<std::size_t> rep(size);
    for (std::size_t x = 0; x < size; ++x) {
        rep[x] = x;
        for (std::size_t y = 0; y < size; ++y)
            if (rel[x][y]) {
                rep[x] = y;
                break;
            }
    }
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            if (rel[x][y] != rel[y][x]) throw PreconditionError("the relation induced by N is not symmetric");
            if (rel[x][y] != (rep[x] == rep[y])) throw PreconditionError("the relation induced by N is not an equivalence");
        }
    for (std::size_t x = 0; x + 1 < size; ++x)
        for (std::size_t y = x + 2; y < size; ++y)
            if (rep[x] == rep[y] && rep[x + 1] != rep[x]) throw PreconditionError("the classes of N are not convex");
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            if (rep[x] != rep[y]) continue;
            if (rep[pos(d->neg(all[x]))] != rep[pos(d->neg(all[y]))]) throw PreconditionError("the classes of N do not respect -");
            for (std::size_t z = 0; z < size; ++z)
                if (rep[pos(d->add(all[x], all[z]))] != rep[pos(d->add(all[y], all[z]))])
                    throw PreconditionError("the classes of N do not respect +");
        }

    auto canon = [d, all, rep](const Element& x) {
        for (std::size_t i = 0; i < all.size(); ++i)
            if (d->eq(all[i], x)) return all[rep[i]];
        throw PreconditionError(d->format(x) + " is not in " + d->name());
    };
    auto q = std::make_shared<QuotientDom>(d, canon, d->name() + "/N");
    HomCandidate h{d, q, [q](const Element& x) { return q->project(x); }, HomKind::Dom, {}};
    return {q, h};
}

QuotientResult quotient_equiv(const DomPtr& d) {
    auto canon = [d](const Element& x) { return f_plus(*d, x); };
    auto q = std::make_shared<QuotientDom>(d, canon, d->name() + "/==");
    HomCandidate h{d, q, [q](const Element& x) { return q->project(x); }, HomKind::Dom, {}};
    return {q, h};
}

HomCandidate s_k_map(const DomPtr& d, const Element& k) {
    auto ge = std::make_shared<SubDomGe>(d, k);
    auto q = quotient_equiv(ge).dom;
    return HomCandidate{d, q, [d, q, k](const Element& y) { return q->project(d->add(y, k)); }, HomKind::Dom, {}};
}

// ---------- gluing ----------

Element CompatibleFamily::theta_plus(const Element& x, const Element& j) const {
    Element t = theta_min_plus(x);
    if (target->eq(j, k)) return t;
    Element s = target->add(j, t);
    return target->radd(target->add(s, target->neg(j)), j);
}

bool check_compatible(const CompatibleFamily& f, const std::vector<Element>& xs, const std::vector<Element>& ws,
                      std::string* witness) {
    const Dom& n = *f.target;
    std::vector<Element> os;
    for (const auto& w : ws)
        if (n.le(f.k, w)) os.push_back(w);
    for (const auto& x : xs)
        for (const auto& i : os)
            for (const auto& j : os) {
                if (!n.lt(i, j)) continue;
                Element s = n.add(j, f.theta_plus(x, i));
                Element expect = n.radd(n.add(s, n.neg(j)), j);
                if (!n.eq(f.theta_plus(x, j), expect)) {
                    if (witness)
                        *witness = "x=" + f.source->format(x) + " i=" + n.format(i) + " j=" + n.format(j);
                    return false;
                }
            }
    return true;
}

GluedDom::GluedDom(CompatibleFamily f, std::string name) : f_(std::move(f)), name_(std::move(name)) {
    if (!is_width(*f_.target, f_.k)) throw PreconditionError(f_.target->format(f_.k) + " is not a width of " + f_.target->name());
    if (name_.empty()) name_ = "glue(" + f_.source->name() + "," + f_.target->name() + ")";
}

bool GluedDom::in_o(const Element& y) const { return f_.target->contains(y) && f_.target->le(f_.k, f_.target->width(y)); }

Element GluedDom::cross_sum(const Element& m, const Element& n) const {
    const Dom& t = *f_.target;
    return upper(t.add(f_.theta_plus(m, t.width(n)), n));
}

bool GluedDom::cross_less(const Element& m, const Element& n) const {
    const Dom& t = *f_.target;
    return t.le(f_.theta_plus(m, t.width(n)), n);
}

Element GluedDom::add(const Element& x, const Element& y) const {
    if (x.tag() == 0 && y.tag() == 0) return lower(f_.source->add(x.part(0), y.part(0)));
    if (x.tag() == 1 && y.tag() == 1) return upper(f_.target->add(x.part(0), y.part(0)));
    if (x.tag() == 0) return cross_sum(x.part(0), y.part(0));
    return cross_sum(y.part(0), x.part(0));
}

Element GluedDom::neg(const Element& x) const {
    if (x.tag() == 0) return lower(f_.source->neg(x.part(0)));
    return upper(f_.target->neg(x.part(0)));
}

std::strong_ordering GluedDom::compare(const Element& x, const Element& y) const {
    if (x.tag() == 0 && y.tag() == 0) return f_.source->compare(x.part(0), y.part(0));
    if (x.tag() == 1 && y.tag() == 1) return f_.target->compare(x.part(0), y.part(0));
    if (x.tag() == 0) return cross_less(x.part(0), y.part(0)) ? std::strong_ordering::less : std::strong_ordering::greater;
    return cross_less(y.part(0), x.part(0)) ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool GluedDom::contains(const Element& x) const {
    if (!x.is_tagged() || x.as_tagged().parts.size() != 1) return false;
    if (x.tag() == 0) return f_.source->contains(x.part(0));
    return x.tag() == 1 && in_o(x.part(0));
}

std::string GluedDom::format(const Element& x) const {
    if (x.tag() == 0) return f_.source->format(x.part(0));
    return "^" + f_.target->format(x.part(0));
}

Element GluedDom::parse(const std::string& text) const {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '^') {
        Element y = f_.target->parse(t.substr(1));
        if (!in_o(y)) throw TypeError(text + " is not in the upper part of " + name_);
        return upper(y);
    }
    return lower(f_.source->parse(t));
}

std::optional<std::vector<Element>> GluedDom::elements() const {
    auto xs = f_.source->elements();
    auto ys = f_.target->elements();
    if (!xs || !ys) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *xs) out.push_back(lower(x));
    for (const auto& y : *ys)
        if (in_o(y)) out.push_back(upper(y));
    return sort_unique(*this, std::move(out));
}

Element GluedDom::sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0) return lower(f_.source->sample(rng));
    Element y = f_.target->sample(rng);
    if (!in_o(y)) y = f_.target->add(y, f_.k);
    return upper(y);
}

std::vector<Element> GluedDom::landmarks() const {
    std::vector<Element> out;
    for (const auto& x : f_.source->landmarks()) out.push_back(lower(x));
    for (auto y : f_.target->landmarks()) {
        if (!in_o(y)) y = f_.target->add(y, f_.k);
        out.push_back(upper(y));
    }
    return out;
}

DomPtr glue(const CompatibleFamily& f, std::string name) { return std::make_shared<GluedDom>(f, std::move(name)); }

// ---------- class groups, insemination, union ----------

ClassGroupDom::ClassGroupDom(DomPtr parent, Predicate member, std::string name)
    : p_(std::move(parent)), member_(std::move(member)), name_(std::move(name)) {}

Element ClassGroupDom::zero() const { return f_plus(*p_, p_->zero()); }
Element ClassGroupDom::add(const Element& x, const Element& y) const { return f_plus(*p_, p_->add(x, y)); }
Element ClassGroupDom::neg(const Element& x) const { return f_plus(*p_, p_->neg(x)); }

bool ClassGroupDom::contains(const Element& x) const {
    return p_->contains(x) && p_->eq(f_plus(*p_, x), x) && member_(x);
}

std::optional<std::vector<Element>> ClassGroupDom::elements() const {
    auto xs = p_->elements();
    if (!xs) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *xs) {
        Element r = f_plus(*p_, x);
        if (member_(r)) out.push_back(r);
    }
    return sort_unique(*this, std::move(out));
}

Element ClassGroupDom::sample(std::mt19937_64& rng) const {
    for (int i = 0; i < 64; ++i) {
        Element r = f_plus(*p_, p_->sample(rng));
        if (member_(r)) return r;
    }
    return zero();
}

std::vector<Element> ClassGroupDom::landmarks() const {
    std::vector<Element> out{zero()};
    for (const auto& x : p_->landmarks()) {
        Element r = f_plus(*p_, x);
        if (member_(r)) out.push_back(r);
    }
    return sort_unique(*this, std::move(out));
}

DomPtr inseminate(const DomPtr& m, Predicate in_p, std::string p_name) {
    if (classify_type(*m) != DomType::Third) throw PreconditionError("insemination needs a dom of the third type");
    auto p = std::make_shared<ClassGroupDom>(m, std::move(in_p), p_name);
    CompatibleFamily f{p, m, m->zero(), [](const Element& x) { return x; }};
    return glue(f, "Ins(" + m->name() + "," + p_name + ")");
}

DomPtr dom_union(const DomPtr& m, const DomPtr& n, const Element& k) {
    if (!is_width(*m, k)) throw PreconditionError(m->format(k) + " is not a width of " + m->name());
    if (!n->eq(n->zero(), k)) throw PreconditionError("the zero of " + n->name() + " is not " + m->format(k));
    auto lower = std::make_shared<SubsetDom>(
        m, [m, k](const Element& x) { return m->lt(m->width(x), k); }, m->name() + "{<" + m->format(k) + "}");
    CompatibleFamily f{lower, n, k, [m, n, k](const Element& x) { return f_plus(*n, m->add(x, k)); }};
    return glue(f, "union(" + m->name() + "," + n->name() + "," + m->format(k) + ")");
}

DomPtr split_at_width(const DomPtr& m, const Element& k) { return dom_union(m, std::make_shared<SubDomGe>(m, k), k); }

// ---------- products ----------

ProductDom::ProductDom(DomPtr m, Predicate in_a, DomPtr n, std::optional<Element> mu, std::string name)
    : m_(std::move(m)), in_a_(std::move(in_a)), n_(std::move(n)), mu_(std::move(mu)), name_(std::move(name)) {
    if (!in_a_(m_->zero())) throw PreconditionError("A does not contain 0");
}

Element ProductDom::make(const Element& x, const Element& y) const {
    if (in_a_(x)) return pair(x, y);
    if (mu_) return pair(x, *mu_);
    return pair_mu(x);
}

Element ProductDom::add(const Element& x, const Element& y) const {
    Element s = m_->add(x.part(0), y.part(0));
    if (!in_a_(s)) return mu_ ? pair(s, *mu_) : pair_mu(s);
    if (x.tag() == 1 || y.tag() == 1) throw PreconditionError("A is not closed in " + name_);
    return pair(s, n_->add(x.part(1), y.part(1)));
}

Element ProductDom::neg(const Element& x) const {
    Element a = m_->neg(x.part(0));
    if (x.tag() == 1) return pair_mu(a);
    if (in_a_(x.part(0))) return pair(a, n_->neg(x.part(1)));
    return mu_ ? pair(a, *mu_) : pair_mu(a);
}

std::strong_ordering ProductDom::compare(const Element& x, const Element& y) const {
    auto c = m_->compare(x.part(0), y.part(0));
    if (c != 0) return c;
    if (x.tag() == 1 || y.tag() == 1) return x.tag() <=> y.tag();
    return n_->compare(x.part(1), y.part(1));
}

bool ProductDom::contains(const Element& x) const {
    if (!x.is_tagged()) return false;
    const auto& parts = x.as_tagged().parts;
    if (x.tag() == 1) return !mu_ && parts.size() == 1 && m_->contains(parts[0]) && !in_a_(parts[0]);
    if (x.tag() != 0 || parts.size() != 2 || !m_->contains(parts[0])) return false;
    if (in_a_(parts[0])) return n_->contains(parts[1]);
    return mu_ && n_->eq(parts[1], *mu_);
}

std::string ProductDom::format(const Element& x) const {
    if (x.tag() == 1) return "(" + m_->format(x.part(0)) + ",mu)";
    return "(" + m_->format(x.part(0)) + "," + n_->format(x.part(1)) + ")";
}

Element ProductDom::parse(const std::string& text) const {
    auto [a, b] = split_pair(trim(text));
    Element x = m_->parse(trim(a));
    std::string tb = trim(b);
    if (tb == "mu") {
        if (in_a_(x)) throw TypeError(text + ": mu is only paired with elements outside A");
        return mu_ ? pair(x, *mu_) : pair_mu(x);
    }
    Element r = pair(x, n_->parse(tb));
    if (!contains(r)) throw TypeError(text + " is not in " + name_);
    return r;
}

std::optional<std::vector<Element>> ProductDom::elements() const {
    auto xs = m_->elements();
    auto ys = n_->elements();
    if (!xs || !ys) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *xs) {
        if (!in_a_(x)) {
            out.push_back(mu_ ? pair(x, *mu_) : pair_mu(x));
            continue;
        }
        for (const auto& y : *ys) out.push_back(pair(x, y));
    }
    return sort_unique(*this, std::move(out));
}

Element ProductDom::sample(std::mt19937_64& rng) const {
    Element x = m_->sample(rng);
    if (in_a_(x)) return pair(x, n_->sample(rng));
    return mu_ ? pair(x, *mu_) : pair_mu(x);
}

std::vector<Element> ProductDom::landmarks() const {
    std::vector<Element> out;
    auto ys = n_->landmarks();
    if (mu_) ys.push_back(*mu_);
    for (const auto& x : m_->landmarks()) {
        if (!in_a_(x)) {
            out.push_back(mu_ ? pair(x, *mu_) : pair_mu(x));
            continue;
        }
        for (const auto& y : ys) out.push_back(pair(x, y));
    }
    return out;
}

DomPtr fibered_product(const DomPtr& m, Predicate in_a, const DomPtr& n, std::optional<Element> mu) {
    if (classify_type(*m) != DomType::First) throw PreconditionError("the fibered product needs a first-type dom on the left");
    if (auto xs = m->elements())
        for (const auto& x : *xs)
            if (in_a(x) && !in_m0(*m, x)) throw PreconditionError("A is not contained in the width-0 part of " + m->name());
    if (!mu) {
        if (auto ys = n->elements(); ys && !ys->empty())
            mu = ys->front();
        else if (dynamic_cast<const CutDom*>(n.get()))
            mu = Element::cut(Cut::neg_inf());
        else
            throw PreconditionError(n->name() + " has no known minimum");
    }
    if (auto ys = n->elements())
        for (const auto& y : *ys)
            if (n->lt(y, *mu)) throw PreconditionError(n->format(*mu) + " is not the minimum of " + n->name());
    std::string name = m->name() + " x_A " + n->name();
    return std::make_shared<ProductDom>(m, std::move(in_a), n, mu, name);
}

DomPtr mu_product(const DomPtr& m, const DomPtr& n) {
    if (classify_type(*m) != DomType::First) throw PreconditionError("the mu-product needs a first-type dom on the left");
    Predicate in_a = [m](const Element& x) { return in_m0(*m, x); };
    return std::make_shared<ProductDom>(m, in_a, n, std::nullopt, m->name() + " x " + n->name());
}

// ---------- collapse ----------

Predicate h_membership(const DomPtr& m) {
    return [m](const Element& x) { return in_m0(*m, x) && multiplicity(*m, x) == 2; };
}

CollapseResult collapse(const DomPtr& m, Predicate in_p) {
    if (classify_type(*m) != DomType::Third) throw PreconditionError("the collapse needs a dom of the third type");
    auto q = quotient_equiv(m).dom;
    auto two = make_finite(trivial_dom(2), "2");
    Element bottom = Element::index(0), top = two->zero();
    Predicate in_a = [m, in_p](const Element& x) { return in_m0(*m, x) && in_p(x); };
    auto coll = std::make_shared<ProductDom>(q, in_a, two, bottom, "Coll(" + m->name() + ")");
    auto eta = [m, q, in_a, bottom, top](const Element& x) {
        Element r = q->project(x);
        if (!in_a(r)) return ProductDom::pair(r, bottom);
        return ProductDom::pair(r, signature(*m, x) == Signature::Plus ? top : bottom);
    };
    return {coll, HomCandidate{m, coll, eta, HomKind::Dom, {}}};
}

// ---------- cuts of a finite dom ----------

CutsOfFiniteDom::CutsOfFiniteDom(DomPtr m, Plus rule) : m_(std::move(m)), rule_(rule) {
    auto xs = m_->elements();
    if (!xs) throw PreconditionError("cuts of a dom need a finite carrier");
    if (classify_type(*m_) != DomType::First) throw PreconditionError("cuts of a dom need a first-type dom");
    xs_ = *xs;
}

std::string CutsOfFiniteDom::name() const {
    return (rule_ == Plus::Standard ? "cuts(" : "cuts'(") + m_->name() + ")";
}

std::size_t CutsOfFiniteDom::idx(const Element& x) const {
    if (!contains(x)) throw TypeError("not a cut of " + m_->name());
    return static_cast<std::size_t>(x.as_index());
}

Element CutsOfFiniteDom::zero() const {
    for (std::size_t i = 0; i < xs_.size(); ++i)
        if (m_->eq(xs_[i], m_->zero())) return Element::index(static_cast<long>(i + 1));
    throw PreconditionError("zero missing from the carrier");
}

Element CutsOfFiniteDom::add(const Element& x, const Element& y) const {
    std::size_t i = idx(x), j = idx(y);
    if (i == 0 || j == 0) return Element::index(0);
    const Element& a = xs_[i - 1];
    const Element& b = xs_[j - 1];
    Element s = rule_ == Plus::Standard ? m_->radd(a, b) : m_->add(a, b);
    for (std::size_t k = 0; k < xs_.size(); ++k)
        if (m_->eq(xs_[k], s)) return Element::index(static_cast<long>(k + 1));
    throw PreconditionError("sum outside the carrier");
}

Element CutsOfFiniteDom::neg(const Element& x) const { return Element::index(static_cast<long>(xs_.size() - idx(x))); }

std::strong_ordering CutsOfFiniteDom::compare(const Element& x, const Element& y) const { return idx(x) <=> idx(y); }

bool CutsOfFiniteDom::contains(const Element& x) const {
    return x.is_index() && x.as_index() >= 0 && static_cast<std::size_t>(x.as_index()) <= xs_.size();
}

std::string CutsOfFiniteDom::format(const Element& x) const { return "c" + std::to_string(idx(x)); }

Element CutsOfFiniteDom::parse(const std::string& text) const {
    std::string t = trim(text);
    if (t.size() < 2 || t[0] != 'c') throw ParseError("expected a cut index like c2, got '" + text + "'");
    try {
        std::size_t used = 0;
        long i = std::stol(t.substr(1), &used);
        if (used + 1 != t.size()) throw ParseError("bad cut index '" + text + "'");
        Element e = Element::index(i);
        if (!contains(e)) throw TypeError(text + " is out of range");
        return e;
    } catch (const std::logic_error&) {
        throw ParseError("bad cut index '" + text + "'");
    }
}

std::optional<std::vector<Element>> CutsOfFiniteDom::elements() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i <= xs_.size(); ++i) out.push_back(Element::index(static_cast<long>(i)));
    return out;
}

DomPtr cuts_of_dom(const DomPtr& m) { return std::make_shared<CutsOfFiniteDom>(m); }
DomPtr cuts_of_dom_alternative(const DomPtr& m) {
    return std::make_shared<CutsOfFiniteDom>(m, CutsOfFiniteDom::Plus::Alternative);
}

// ---------- finite doms inside cut doms ----------

HomCandidate embed_finite(std::size_t n) {
    if (n == 0) throw PreconditionError("the empty dom has no embedding");
    std::size_t t = std::max<std::size_t>(n / 2, 1);
    Group g = t == 1 ? Group::rationals() : Group::lex(std::vector<Group>(t, Group::rationals()));
    CutEngine e(g);
    std::vector<Element> image;
    DomPtr target;
    if (n % 2 == 0)
        target = std::make_shared<CutDom>(e);
    else
        target = std::make_shared<TildeDom>(e), image.push_back(Element::group(g.zero()));
    if (n > 1) {
        image.push_back(Element::cut(e.minus(g.zero())));
        image.push_back(Element::cut(e.plus(g.zero())));
        for (std::size_t l = 1; l < t; ++l) {
            Cut w = e.width_edge(l);
            image.push_back(Element::cut(w));
            image.push_back(Element::cut(e.neg(w)));
        }
    }
    image = sort_unique(*target, std::move(image));
    if (image.size() != n) throw PreconditionError("embedding image has the wrong size");
    auto source = make_finite(trivial_dom(n));
    return HomCandidate{source, target, [image](const Element& x) { return image.at(static_cast<std::size_t>(x.as_index())); },
                        HomKind::Dom, {}};
}

}  // namespace domkit
