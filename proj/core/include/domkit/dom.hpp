#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "domkit/cut.hpp"
#include "domkit/element.hpp"
#include "domkit/group.hpp"

namespace domkit {

class Dom;
using DomPtr = std::shared_ptr<const Dom>;

// A carrier for (<=, 0, +, -). Subclasses supply the primitives; everything else is derived.
class Dom {
public:
    virtual ~Dom() = default;

    virtual std::string name() const = 0;
    virtual Element zero() const = 0;
    virtual Element add(const Element& x, const Element& y) const = 0;
    virtual Element neg(const Element& x) const = 0;
    virtual std::strong_ordering compare(const Element& x, const Element& y) const = 0;
    virtual bool contains(const Element& x) const = 0;
    virtual std::string format(const Element& x) const = 0;
    virtual Element parse(const std::string& text) const;

    // Ascending list of all elements, when the carrier is finite.
    virtual std::optional<std::vector<Element>> elements() const { return std::nullopt; }
    virtual Element sample(std::mt19937_64& rng) const;
    // Values every sampled check must include.
    virtual std::vector<Element> landmarks() const;

    // Known answers for infinite carriers.
    virtual std::optional<bool> structurally_proper() const { return std::nullopt; }
    virtual std::optional<bool> structurally_strongly_proper() const { return std::nullopt; }

    Element radd(const Element& x, const Element& y) const { return neg(add(neg(x), neg(y))); }
    Element sub(const Element& x, const Element& y) const { return radd(x, neg(y)); }
    Element lsub(const Element& x, const Element& y) const { return add(x, neg(y)); }
    Element delta() const { return neg(zero()); }
    Element width(const Element& x) const { return sub(x, x); }
    Element abs(const Element& x) const { return max(x, neg(x)); }
    Element max(const Element& x, const Element& y) const { return lt(x, y) ? y : x; }
    Element min(const Element& x, const Element& y) const { return lt(y, x) ? y : x; }

    bool eq(const Element& x, const Element& y) const { return compare(x, y) == 0; }
    bool lt(const Element& x, const Element& y) const { return compare(x, y) < 0; }
    bool le(const Element& x, const Element& y) const { return compare(x, y) <= 0; }
    bool is_finite() const { return elements().has_value(); }
};

// Sorted, duplicate-free copy.
std::vector<Element> sort_unique(const Dom& d, std::vector<Element> xs);
// Finite carriers give all elements; others give landmarks plus `samples` seeded draws.
std::vector<Element> test_universe(const Dom& d, std::size_t samples, std::uint64_t seed);

class GroupDom : public Dom {
public:
    explicit GroupDom(Group g) : g_(std::move(g)) {}
    const Group& group() const { return g_; }

    std::string name() const override { return "group(" + g_.name() + ")"; }
    Element zero() const override { return Element::group(g_.zero()); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override { return g_.format(x.as_group()); }
    Element parse(const std::string& text) const override { return Element::group(g_.parse(text)); }
    Element sample(std::mt19937_64& rng) const override { return Element::group(g_.sample(rng)); }
    std::vector<Element> landmarks() const override;

protected:
    Group g_;
};

// Same order and plus as G, but -x := *x + delta.
class ShiftedGroupDom : public GroupDom {
public:
    ShiftedGroupDom(Group g, GroupElement shift);
    std::string name() const override;
    Element neg(const Element& x) const override;

private:
    GroupElement shift_;
};

class CutDom : public Dom {
public:
    explicit CutDom(CutEngine engine) : e_(std::move(engine)) {}
    const CutEngine& engine() const { return e_; }

    std::string name() const override { return "cuts(" + e_.group().name() + ")"; }
    Element zero() const override { return Element::cut(e_.plus(e_.group().zero())); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override { return x.is_cut(); }
    std::string format(const Element& x) const override { return e_.format(x.as_cut()); }
    Element parse(const std::string& text) const override { return Element::cut(e_.parse(text)); }
    Element sample(std::mt19937_64& rng) const override { return Element::cut(e_.sample(rng)); }
    std::vector<Element> landmarks() const override;
    std::optional<bool> structurally_proper() const override { return true; }
    std::optional<bool> structurally_strongly_proper() const override { return true; }

private:
    CutEngine e_;
};

// G disjoint union its cuts; group elements act on cuts by translation.
class TildeDom : public Dom {
public:
    explicit TildeDom(CutEngine engine) : e_(std::move(engine)) {}
    const CutEngine& engine() const { return e_; }

    std::string name() const override { return "tilde(" + e_.group().name() + ")"; }
    Element zero() const override { return Element::group(e_.group().zero()); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override { return x.is_cut() || x.is_group(); }
    std::string format(const Element& x) const override;
    Element parse(const std::string& text) const override;
    Element sample(std::mt19937_64& rng) const override;
    std::vector<Element> landmarks() const override;
    std::optional<bool> structurally_proper() const override { return true; }
    std::optional<bool> structurally_strongly_proper() const override { return false; }

private:
    CutEngine e_;
};

// M^{>=a} for a width a, re-based at a.
class SubDomGe : public Dom {
public:
    SubDomGe(DomPtr parent, Element a);
    const Element& base() const { return a_; }

    std::string name() const override;
    Element zero() const override { return a_; }
    Element add(const Element& x, const Element& y) const override { return p_->add(x, y); }
    Element neg(const Element& x) const override { return p_->neg(x); }
    std::strong_ordering compare(const Element& x, const Element& y) const override { return p_->compare(x, y); }
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override { return p_->format(x); }
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;
    Element sample(std::mt19937_64& rng) const override { return p_->add(p_->sample(rng), a_); }
    std::vector<Element> landmarks() const override;

private:
    DomPtr p_;
    Element a_;
};

// ---------- axioms ----------

enum class Axiom { Commutativity, Associativity, Identity, Involution, Antitone, PA, MA, MB, MCa, MCb, MCprime };

std::string to_string(Axiom a);
std::vector<Axiom> predom_axioms();
std::vector<Axiom> dom_axioms();
std::vector<Axiom> all_axioms();
// Accepts names like "dom", "predom", "MA", "MC(b)", "MCb", "MC'", "assoc"; comma separated.
std::vector<Axiom> parse_axioms(const std::string& text);

struct CheckOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::size_t exhaustive_limit = 40;
};

struct AxiomResult {
    Axiom axiom;
    bool pass = true;
    std::string witness;  // "x=.. y=.." of the least failing tuple found
};

struct AxiomReport {
    bool exhaustive = false;
    std::vector<AxiomResult> results;

    bool ok() const;
    bool passes(Axiom a) const;
    std::vector<Axiom> failures() const;
    std::string to_text() const;
};

AxiomReport check_axioms(const Dom& d, const std::vector<Axiom>& which, const CheckOptions& opt = {});

// ---------- derived notions ----------

enum class IterMode { SubN, AddN, ScaleN };
Element iterate(const Dom& d, const Element& x, const Element& y, long n, IterMode mode);

enum class DomType { First, Second, Third };
std::string to_string(DomType t);
DomType classify_type(const Dom& d);

Element f_plus(const Dom& d, const Element& x);
Element f_minus(const Dom& d, const Element& x);
std::vector<Element> equiv_class(const Dom& d, const Element& x);
int multiplicity(const Dom& d, const Element& x);
bool equivalent(const Dom& d, const Element& x, const Element& y);
Signature signature(const Dom& d, const Element& x);

bool is_width(const Dom& d, const Element& x);
bool in_m0(const Dom& d, const Element& x);
std::vector<Element> widths(const Dom& d, const std::vector<Element>& universe);
// Double points of a third-type dom (D), and their classes' representatives F+ (H).
std::vector<Element> double_points(const Dom& d, const std::vector<Element>& universe);
std::vector<Element> h_group(const Dom& d, const std::vector<Element>& universe);
// Extensible group: {0}, G(M) or H(M) by type, as F+ representatives.
std::vector<Element> extensible_group(const Dom& d, const std::vector<Element>& universe);

struct AssociatedGroup {
    std::string description;
    std::optional<std::vector<Element>> elements;  // F+ representatives, finite carriers only
    std::function<Element(const Element&)> project;
};
AssociatedGroup associated_group(const DomPtr& d);

bool is_proper(const Dom& d);
bool is_strongly_proper(const Dom& d);

// Lambda(a) = {x in G : x <= [y] for some y in M^{0} below a}+, for proper cut doms with P = G(M).
Cut lambda_map(const CutDom& d, const Cut& a);

// ---------- homomorphisms ----------

enum class HomKind { Dom, QuasiDom };

struct HomCandidate {
    DomPtr source;
    DomPtr target;
    std::function<Element(const Element&)> map;
    HomKind kind = HomKind::Dom;
    std::vector<Element> universe;  // empty: all source elements, else sampled
};

struct HomReport {
    bool ok = true;
    std::vector<std::string> failures;
    bool injective = true;
    std::vector<Element> kernel;
    bool kernel_convex = true;

    std::string to_text(const Dom& source) const;
};

HomReport verify_hom(const HomCandidate& h, const CheckOptions& opt = {});
std::vector<Element> kernel(const HomCandidate& h, const CheckOptions& opt = {});

}  // namespace domkit
