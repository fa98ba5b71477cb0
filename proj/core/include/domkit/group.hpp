#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "domkit/number.hpp"

namespace domkit {

enum class AtomKind { Integers, Rationals, Localized };

struct Atom {
    AtomKind kind = AtomKind::Rationals;
    unsigned long p = 0;

    bool contains(const Rational& q) const;
    bool contains(const Real2& x) const;
    bool dense() const { return kind != AtomKind::Integers; }
    std::string name() const;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct GroupElement {
    std::vector<Rational> coords;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// Coordinate vectors with anchors: prefixes of group elements whose last entry may be irrational.
using Point = std::vector<Real2>;

Point to_point(const GroupElement& g);

// Bivariate polynomial rule f(x, y) = sum c_ij x^i y^j over single-coordinate base and fiber.
struct Polynomial2 {
    std::map<std::pair<int, int>, Rational> coeffs;
    Rational eval(const Rational& x, const Rational& y) const;
};

struct FactorSet {
    std::string name;
    // f(c, c') for base coordinates c, c'; returns fiber coordinates.
    std::function<std::vector<Rational>(const std::vector<Rational>&, const std::vector<Rational>&)> rule;
    std::optional<Polynomial2> polynomial;

    static FactorSet zero(std::size_t fiber_dim);
    static FactorSet from_polynomial(std::string name, Polynomial2 poly);
};

struct FactorSetReport {
    bool ok = true;
    std::string law;      // "symmetry" | "normalization" | "cocycle" | "membership"
    std::string witness;  // failing pair or triple
};

class Group;

struct ConvexLadder {
    // levels[k] spans the k trailing coordinates; levels.size() == dim + 1
    std::vector<std::size_t> levels;
};

class Group {
public:
    static Group integers();
    static Group rationals();
    static Group localized(unsigned long p);
    static Group lex(const std::vector<Group>& parts);
    static Group crossed(const Group& base, const Group& fiber, FactorSet f);

    std::size_t dim() const { return rep_->atoms.size(); }
    const Atom& atom(std::size_t i) const { return rep_->atoms.at(i); }
    const std::vector<Atom>& atoms() const { return rep_->atoms; }
    bool is_crossed() const { return static_cast<bool>(rep_->twist); }
    std::size_t base_dim() const { return rep_->base_dim; }
    const std::string& name() const { return rep_->name; }

    bool contains(const GroupElement& a) const;
    void require(const GroupElement& a) const;
    GroupElement zero() const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }
    std::strong_ordering cmp(const GroupElement& a, const GroupElement& b) const;
    std::optional<GroupElement> is_discrete() const;
    ConvexLadder convex_ladder() const;

    // Elements and cut points of G/H_k; k trailing coordinates are dropped.
    Group quotient(std::size_t k) const;
    GroupElement quotient_project(std::size_t k, const GroupElement& a) const;
    Point add_points(const Point& a, const Point& b) const;
    Point neg_point(const Point& a) const;

    GroupElement sample(std::mt19937_64& rng) const;
    std::string format(const GroupElement& a) const;
    GroupElement parse(const std::string& text) const;

    friend bool operator==(const Group& a, const Group& b) { return a.rep_->name == b.rep_->name; }

private:
    struct Rep {
        std::vector<Atom> atoms;
        std::size_t base_dim = 0;
        std::shared_ptr<const FactorSet> twist;
        std::string name;
    };
    explicit Group(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::vector<Rational> twist_value(const std::vector<Rational>& c1, const std::vector<Rational>& c2) const;

    std::shared_ptr<const Rep> rep_;
};

FactorSetReport validate_factor_set(const Group& base, const Group& fiber, const FactorSet& f,
                                    std::size_t samples = 200, std::uint64_t seed = 0);

// ds(x, y) = s(x) + s(y) - s(x + y) for a section s: C -> B of an extension of C by the
// convex subgroup of B spanned by its trailing fiber coordinates.
FactorSet factor_set_of_section(const Group& extension, std::size_t fiber_dim,
                                std::function<GroupElement(const GroupElement&)> section);

}  // namespace domkit
