#pragma once

#include <compare>
#include <variant>
#include <vector>

#include "domkit/cut.hpp"
#include "domkit/group.hpp"

namespace domkit {

struct Element;

// Injections and pairs built by constructions.
struct Tagged {
    int tag = 0;
    std::vector<Element> parts;
};

struct Element {
    std::variant<long, GroupElement, Cut, Tagged> value;

    static Element index(long i) { return Element{i}; }
    static Element group(GroupElement g) { return Element{std::move(g)}; }
    static Element cut(Cut c) { return Element{std::move(c)}; }
    static Element tagged(int tag, std::vector<Element> parts) { return Element{Tagged{tag, std::move(parts)}}; }

    bool is_index() const { return std::holds_alternative<long>(value); }
    bool is_group() const { return std::holds_alternative<GroupElement>(value); }
    bool is_cut() const { return std::holds_alternative<Cut>(value); }
    bool is_tagged() const { return std::holds_alternative<Tagged>(value); }

    long as_index() const;
    const GroupElement& as_group() const;
    const Cut& as_cut() const;
    const Tagged& as_tagged() const;
    int tag() const { return as_tagged().tag; }
    const Element& part(std::size_t i) const { return as_tagged().parts.at(i); }
};

bool operator==(const Tagged& a, const Tagged& b);
bool operator==(const Element& a, const Element& b);

// Arbitrary but fixed total order on representations, for use as map keys.
struct StructuralLess {
    bool operator()(const Element& a, const Element& b) const;
};

}  // namespace domkit
