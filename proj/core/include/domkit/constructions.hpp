#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "domkit/dom.hpp"
#include "domkit/finite.hpp"

namespace domkit {

using Predicate = std::function<bool(const Element&)>;

// Subset of a dom with the inherited structure; the subset must contain 0 and be closed.
class SubsetDom : public Dom {
public:
    SubsetDom(DomPtr parent, Predicate member, std::string name);
    const DomPtr& parent() const { return p_; }

    std::string name() const override { return name_; }
    Element zero() const override { return p_->zero(); }
    Element add(const Element& x, const Element& y) const override { return p_->add(x, y); }
    Element neg(const Element& x) const override { return p_->neg(x); }
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(x, y); }
    bool contains(const Element& x) const override { return p_->contains(x) && member_(x); }
    std::string format(const Element& x) const override { return p_->format(x); }
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override;
    std::vector<Element> landmarks() const override;

private:
    DomPtr p_;
    Predicate member_;
    std::string name_;
};

// (M, >=, delta, +R, -)
DomPtr dual(const DomPtr& d);

// M with absorbing -oo, +oo and (-oo) + (+oo) = -oo.
DomPtr infinity_extension(const DomPtr& d);

// Second type: -s x := 0 - x. First type with minimal positive `one`, 1 - 1 = 0: -s x := (-x) - 1.
// Third type: d itself. `one` is found automatically for finite carriers and for shifts of second-type doms.
DomPtr shift(const DomPtr& d, std::optional<Element> one = std::nullopt);

// Quotient by a canonical-representative map; the map must respect -, + and convexity.
class QuotientDom : public Dom {
public:
    QuotientDom(DomPtr parent, std::function<Element(const Element&)> canon, std::string name);
    const DomPtr& parent() const { return p_; }
    Element project(const Element& x) const { return canon_(x); }

    std::string name() const override { return name_; }
    Element zero() const override { return canon_(p_->zero()); }
    Element add(const Element& x, const Element& y) const override { return canon_(p_->add(x, y)); }
    Element neg(const Element& x) const override { return canon_(p_->neg(x)); }
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(x, y); }
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override { return "[" + p_->format(x) + "]"; }
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override { return canon_(p_->sample(rng)); }
    std::vector<Element> landmarks() const override;

private:
    DomPtr p_;
    std::function<Element(const Element&)> canon_;
    std::string name_;
};

struct QuotientResult {
    std::shared_ptr<const QuotientDom> dom;
    HomCandidate map;
};

// x ~ y iff y + w1 <= x <= y +R w2 for some w1, w2 in N. Finite carriers.
QuotientResult quotient_by_subdom(const DomPtr& d, const std::vector<Element>& n);
// M / == with F+ representatives.
QuotientResult quotient_equiv(const DomPtr& d);
// y -> [y + k]_k into M^{>=k} / ==.
HomCandidate s_k_map(const DomPtr& d, const Element& k);

// theta_j(x)+ for every width j >= k of the target, generated from theta_k.
struct CompatibleFamily {
    DomPtr source;
    DomPtr target;
    Element k;
    std::function<Element(const Element&)> theta_min_plus;

    Element theta_plus(const Element& x, const Element& j) const;
};

// Checks theta_j(x) = [j + theta_i(x)+]_j for widths i < j of the target on the given samples.
bool check_compatible(const CompatibleFamily& f, const std::vector<Element>& xs, const std::vector<Element>& ws,
                      std::string* witness = nullptr);

// M (tag 0) disjoint union N^{O} (tag 1), with O the widths of N that are >= k.
class GluedDom : public Dom {
public:
    explicit GluedDom(CompatibleFamily f, std::string name = "");
    const CompatibleFamily& family() const { return f_; }
    static Element lower(const Element& x) { return Element::tagged(0, {x}); }
    static Element upper(const Element& y) { return Element::tagged(1, {y}); }

    std::string name() const override { return name_; }
    Element zero() const override { return lower(f_.source->zero()); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override;
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override;
    std::vector<Element> landmarks() const override;

private:
    bool in_o(const Element& y) const;
    Element cross_sum(const Element& m, const Element& n) const;
    bool cross_less(const Element& m, const Element& n) const;

    CompatibleFamily f_;
    std::string name_;
};

DomPtr glue(const CompatibleFamily& f, std::string name = "");

// Classes of a third-type dom forming a subgroup of G(M), on F+ representatives.
class ClassGroupDom : public Dom {
public:
    ClassGroupDom(DomPtr parent, Predicate member, std::string name);
    const DomPtr& parent() const { return p_; }

    std::string name() const override { return name_; }
    Element zero() const override;
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(x, y); }
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override { return "[" + p_->format(x) + "]"; }
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override;
    std::vector<Element> landmarks() const override;

private:
    DomPtr p_;
    Predicate member_;
    std::string name_;
};

// P dagger_iota M, for P a subgroup of H(M) given by a membership test on F+ representatives.
DomPtr inseminate(const DomPtr& m, Predicate in_p, std::string p_name);
// M^{<k} dagger_{theta_k} N, with N a super-dom of M^{>=k} sharing M's element representation.
DomPtr dom_union(const DomPtr& m, const DomPtr& n, const Element& k);
// The decomposition M = M^{<k} dagger M^{>=k} of a cut (W_L, W_R) of the widths with min W_R = k.
DomPtr split_at_width(const DomPtr& m, const Element& k);

// Pairs (x, y); y = mu off A.
class ProductDom : public Dom {
public:
    ProductDom(DomPtr m, Predicate in_a, DomPtr n, std::optional<Element> mu, std::string name);
    static Element pair(const Element& x, const Element& y) { return Element::tagged(0, {x, y}); }
    static Element pair_mu(const Element& x) { return Element::tagged(1, {x}); }

    std::string name() const override { return name_; }
    Element zero() const override { return pair(m_->zero(), n_->zero()); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override;
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override;
    std::vector<Element> landmarks() const override;

private:
    Element make(const Element& x, const Element& y) const;

    DomPtr m_;
    Predicate in_a_;
    DomPtr n_;
    std::optional<Element> mu_;  // none: the separate symbol of the mu-product
    std::string name_;
};

// M x_A N, N with a minimum (found for finite N, else given).
DomPtr fibered_product(const DomPtr& m, Predicate in_a, const DomPtr& n, std::optional<Element> mu = std::nullopt);
// M x N with a fresh symbol mu.
DomPtr mu_product(const DomPtr& m, const DomPtr& n);

struct CollapseResult {
    DomPtr dom;
    HomCandidate eta;
};

// Coll(M, P) = M/== x_P 2, P given by a test on F+ representatives of width-0 classes.
CollapseResult collapse(const DomPtr& m, Predicate in_p);
Predicate h_membership(const DomPtr& m);

// The n+1 cuts of a finite first-type dom, cut i = ({x_0..x_{i-1}}, {x_i..}).
class CutsOfFiniteDom : public Dom {
public:
    enum class Plus { Standard, Alternative };
    CutsOfFiniteDom(DomPtr m, Plus rule = Plus::Standard);

    std::string name() const override;
    Element zero() const override;
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override;
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;

private:
    std::size_t idx(const Element& x) const;
    DomPtr m_;
    std::vector<Element> xs_;
    Plus rule_;
};

DomPtr cuts_of_dom(const DomPtr& m);
DomPtr cuts_of_dom_alternative(const DomPtr& m);

// The trivial dom n inside cuts(Q^t) (n = 2t) or tilde(Q^t) (n = 2t+1).
HomCandidate embed_finite(std::size_t n);

}  // namespace domkit
