#include "domkit/element.hpp"

#include "domkit/error.hpp"

namespace domkit {

long Element::as_index() const {
    if (auto p = std::get_if<long>(&value)) return *p;
    throw TypeError("element is not a table index");
}

const GroupElement& Element::as_group() const {
    if (auto p = std::get_if<GroupElement>(&value)) return *p;
    throw TypeError("element is not a group element");
}

const Cut& Element::as_cut() const {
    if (auto p = std::get_if<Cut>(&value)) return *p;
    throw TypeError("element is not a cut");
}

const Tagged& Element::as_tagged() const {
    if (auto p = std::get_if<Tagged>(&value)) return *p;
    throw TypeError("element is not a constructed element");
}

bool operator==(const Tagged& a, const Tagged& b) { return a.tag == b.tag && a.parts == b.parts; }

bool operator==(const Element& a, const Element& b) { return a.value == b.value; }

namespace {

int cmp_real2(const Real2& a, const Real2& b) {
    int c = cmp(a.rational_part(), b.rational_part());
    if (c != 0) return c;
    return cmp(a.sqrt2_part(), b.sqrt2_part());
}

int cmp_elem(const Element& a, const Element& b);

int cmp_cut(const Cut& a, const Cut& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.level != b.level) return a.level < b.level ? -1 : 1;
    if (a.side != b.side) return a.side < b.side ? -1 : 1;
    if (a.point.size() != b.point.size()) return a.point.size() < b.point.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.point.size(); ++i) {
        int c = cmp_real2(a.point[i], b.point[i]);
        if (c != 0) return c;
    }
    return 0;
}

int cmp_elem(const Element& a, const Element& b) {
    if (a.value.index() != b.value.index()) return a.value.index() < b.value.index() ? -1 : 1;
    switch (a.value.index()) {
    case 0: {
        long x = a.as_index(), y = b.as_index();
        return x < y ? -1 : x > y ? 1 : 0;
    }
    case 1: {
        const auto& x = a.as_group().coords;
        const auto& y = b.as_group().coords;
        if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            int c = cmp(x[i], y[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    case 2:
        return cmp_cut(a.as_cut(), b.as_cut());
    default: {
        const auto& x = a.as_tagged();
        const auto& y = b.as_tagged();
        if (x.tag != y.tag) return x.tag < y.tag ? -1 : 1;
        if (x.parts.size() != y.parts.size()) return x.parts.size() < y.parts.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.parts.size(); ++i) {
            int c = cmp_elem(x.parts[i], y.parts[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    }
}

}  // namespace

bool StructuralLess::operator()(const Element& a, const Element& b) const { return cmp_elem(a, b) < 0; }

}  // namespace domkit
