#pragma once

#include <functional>
#include <string>
#include <vector>

#include "domkit/dom.hpp"

namespace domkit {

// v : M -> C. Values are elements compared by value_le; v(0) must be the minimum of C.
struct Valuation {
    std::string name;
    DomPtr source;
    std::function<Element(const Element&)> value;
    std::function<bool(const Element&, const Element&)> value_le;
    std::function<std::string(const Element&)> format_value;

    bool le(const Element& x, const Element& y) const { return value_le(value(x), value(y)); }
    bool eq(const Element& x, const Element& y) const;
    bool lt(const Element& x, const Element& y) const { return !le(y, x); }
};

Valuation trivial_valuation(const DomPtr& d);
// +-0 to the minimum, everything else to 1. Not for second-type doms.
Valuation two_valued_valuation(const DomPtr& d);
// x -> x^ into the widths.
Valuation width_valuation(const DomPtr& d);
// Archimedean classes of |x| under repeated +R, doubling at most `max_doublings` times.
Valuation natural_valuation(const DomPtr& d, int max_doublings = 128);
// Least width y^ with y + x^ = x or y - x^ = x, read as its lower edge.
// Finite carriers and cut doms.
Valuation w_valuation(const DomPtr& d);

enum class ValuationAxiom { V1, V2, V3, V4, Strong };
std::string to_string(ValuationAxiom a);
std::vector<ValuationAxiom> all_valuation_axioms();

struct ValuationResult {
    ValuationAxiom axiom;
    bool pass = true;
    std::string witness;
};

struct ValuationReport {
    std::vector<ValuationResult> results;
    bool ok() const;
    bool passes(ValuationAxiom a) const;
    std::string to_text() const;
};

// Finite carriers exhaustively, others on a seeded universe.
std::vector<Element> valuation_universe(const Dom& d, const CheckOptions& opt);

ValuationReport check_valuation(const Valuation& v, const std::vector<ValuationAxiom>& which, const CheckOptions& opt = {});

// Whether `coarse` is a coarsening of `fine`: v(x) <= v(y) implies v'(x) <= v'(y).
bool coarsening_of(const Valuation& fine, const Valuation& coarse, const CheckOptions& opt = {});

// Value classes of the universe in ascending order.
std::vector<std::vector<Element>> value_partition(const Valuation& v, const std::vector<Element>& universe);
std::string partition_text(const Valuation& v, const std::vector<Element>& universe);

}  // namespace domkit
