#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "domkit/group.hpp"

namespace domkit {

enum class Side : std::int8_t { Minus = -1, Filled = 0, Plus = 1 };

struct Cut {
    enum class Kind : std::uint8_t { NegInf, Node, PosInf };

    Kind kind = Kind::NegInf;
    std::size_t level = 0;  // ladder index of the invariance group
    Point point;            // coordinates of G/H_level; the last one is the anchor
    Side side = Side::Plus;

    static Cut neg_inf() { return Cut{}; }
    static Cut pos_inf() { return Cut{Kind::PosInf, 0, {}, Side::Plus}; }
    bool finite() const { return kind == Kind::Node; }
    const Real2& anchor() const { return point.back(); }

    friend bool operator==(const Cut&, const Cut&) = default;
};

enum class AnchorField { Rationals, QSqrt2 };

enum class DiffMode { Right, Left };

enum class Signature { Minus, Zero, Plus, Infinity, Spade };

std::string to_string(Signature s);

class CutEngine {
public:
    explicit CutEngine(Group g, AnchorField field = AnchorField::QSqrt2);

    const Group& group() const { return g_; }
    AnchorField anchor_field() const { return field_; }
    std::size_t dim() const { return g_.dim(); }

    // Validates and canonicalizes; over a discrete anchor atom x- becomes (x-1)+.
    Cut node(std::size_t level, Point point, Side side) const;
    Cut plus(const GroupElement& g) const;
    Cut minus(const GroupElement& g) const;
    Cut filled(const Point& point) const;
    Cut edge(std::size_t level, const GroupElement& prefix, Side side) const;
    Cut width_edge(std::size_t level) const;

    bool member_below(const GroupElement& g, const Cut& c) const;
    bool member_above(const GroupElement& g, const Cut& c) const;

    Cut neg(const Cut& c) const;
    Cut add(const Cut& a, const Cut& b) const;
    Cut radd(const Cut& a, const Cut& b) const;
    Cut diff(DiffMode mode, const Cut& a, const Cut& b) const;
    Cut width(const Cut& c) const;
    std::size_t invariance_level(const Cut& c) const;
    std::strong_ordering compare(const Cut& a, const Cut& b) const;
    Cut shift(const GroupElement& g, const Cut& c) const;
    Cut project_cut(const Cut& c, std::size_t k) const;
    Signature signature(const Cut& c) const;

    // Supergroup witnesses: coordinates in Q for Zloc(p) atoms, in Q(sqrt2) for Q atoms.
    Cut induced_cut(const Point& x) const;
    bool fills(const Point& x, const Cut& c) const;

    // Sup of the shifts of a by an ascending cofinal chain in b's lower set; no side table.
    Cut oracle_sum(const Cut& a, const Cut& b) const;
    Cut oracle_radd(const Cut& a, const Cut& b) const;
    GroupElement cofinal_chain(const Cut& b, const mpz_class& n) const;

    // The representable cut with the given lower set, probed near hint.
    Cut identify(const std::function<bool(const GroupElement&)>& below, const Point& hint) const;

    Cut sample(std::mt19937_64& rng) const;
    std::vector<Cut> landmarks() const;

    std::string format(const Cut& c) const;
    Cut parse(const std::string& text) const;

private:
    bool anchor_allowed(const Real2& x) const;
    Point pad(const Point& p) const;
    Point truncate(const Point& p, std::size_t len) const;
    Point unit_step(std::size_t len, long k) const;
    std::vector<Cut> candidates_near(const Point& hint) const;
    std::vector<GroupElement> probes_near(const Point& hint) const;
    Cut pick(const std::vector<Cut>& candidates, const std::vector<GroupElement>& tests,
             const std::vector<bool>& inside) const;

    Group g_;
    AnchorField field_;
};

}  // namespace domkit
