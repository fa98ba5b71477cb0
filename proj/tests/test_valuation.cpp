#include <doctest.h>

#include "domkit/valuation.hpp"
#include "support.hpp"

using namespace domkit;
using namespace domkit::testing;

namespace {

CheckOptions opts(std::size_t n = 300) {
    CheckOptions o;
    o.samples = n;
    o.seed = 5;
    return o;
}

std::vector<DomPtr> carriers() {
    std::vector<DomPtr> out;
    for (std::size_t n = 1; n <= 6; ++n) out.push_back(finite_dom(n));
    out.push_back(cuts_of(Group::rationals()));
    out.push_back(cuts_of(lex_qq()));
    return out;
}

bool same_value(const Valuation& v, const Element& x, const Element& y) {
    return v.value_le(v.value(x), v.value(y)) && v.value_le(v.value(y), v.value(x));
}

}  // namespace

TEST_CASE("width valuation is strong") {
    for (const DomPtr& d : carriers()) {
        auto v = width_valuation(d);
        auto rep = check_valuation(v, all_valuation_axioms(), opts());
        CHECK(rep.passes(ValuationAxiom::V1));
        CHECK(rep.passes(ValuationAxiom::V2));
        CHECK(rep.passes(ValuationAxiom::V3));
        CHECK(rep.passes(ValuationAxiom::Strong));
        CHECK(coarsening_of(width_valuation(d), v, opts()));
    }
    // not convex once there are two nonzero widths
    CHECK_FALSE(check_valuation(width_valuation(cuts_of(lex_qq())), {ValuationAxiom::V4}, opts()).ok());
}

TEST_CASE("natural valuation is convex") {
    for (const DomPtr& d : carriers()) {
        auto v = natural_valuation(d);
        auto rep = check_valuation(v, {ValuationAxiom::V1, ValuationAxiom::V2, ValuationAxiom::V3, ValuationAxiom::V4}, opts());
        CHECK_MESSAGE(rep.ok(), d->name() << "\n" << rep.to_text());
        CHECK(coarsening_of(natural_valuation(d), v, opts()));
    }
    CHECK_FALSE(check_valuation(natural_valuation(cuts_of(Group::rationals())), {ValuationAxiom::Strong}, opts()).ok());
}

TEST_CASE("convexity and strength agree with the coarsening criteria on finite doms") {
    for (std::size_t n = 1; n <= 6; ++n) {
        auto d = finite_dom(n);
        std::vector<Valuation> vs{trivial_valuation(d), width_valuation(d), natural_valuation(d), w_valuation(d)};
        if (classify_type(*d) != DomType::Second) vs.push_back(two_valued_valuation(d));
        for (const auto& v : vs) {
            auto rep = check_valuation(v, all_valuation_axioms());
            CHECK(rep.passes(ValuationAxiom::V4) == coarsening_of(natural_valuation(d), v));
            CHECK(rep.passes(ValuationAxiom::Strong) == coarsening_of(width_valuation(d), v));
        }
    }
}

TEST_CASE("coarsenings") {
    for (const DomPtr& d : carriers()) {
        CHECK(coarsening_of(width_valuation(d), trivial_valuation(d), opts()));
        CHECK(coarsening_of(natural_valuation(d), trivial_valuation(d), opts()));
        CHECK(coarsening_of(natural_valuation(d), two_valued_valuation(d), opts()));
    }
    CHECK_FALSE(coarsening_of(width_valuation(cuts_of(Group::rationals())), natural_valuation(cuts_of(Group::rationals())), opts()));
}

TEST_CASE("sums under strong and convex valuations") {
    for (const DomPtr& d : carriers()) {
        auto u = valuation_universe(*d, opts(150));
        for (const auto& v : {width_valuation(d), natural_valuation(d)}) {
            bool strong = check_valuation(v, {ValuationAxiom::Strong}, opts()).ok();
            for (const auto& x : u)
                for (const auto& y : u) {
                    if (strong) CHECK(same_value(v, d->radd(x, y), d->add(x, y)));
                    if (v.lt(x, y)) CHECK(same_value(v, d->add(x, y), y));
                }
        }
    }
}

TEST_CASE("value partitions") {
    auto q = cuts_of(Group::rationals());
    CHECK(value_partition(natural_valuation(q), test_universe(*q, 40, 1)).size() == 3);
    auto qq = cuts_of(lex_qq());
    CHECK(value_partition(natural_valuation(qq), test_universe(*qq, 40, 1)).size() == 5);
    auto f5 = finite_dom(5);
    CHECK(partition_text(natural_valuation(f5), *f5->elements()) == "classes: 3\n[2]: 2\n[3]: 1 3\n[4]: 0 4\n");
}

TEST_CASE("w valuation") {
    for (const DomPtr& d : carriers()) {
        auto v = w_valuation(d);
        auto rep = check_valuation(v, {ValuationAxiom::V1, ValuationAxiom::V2, ValuationAxiom::V3}, opts());
        CHECK_MESSAGE(rep.ok(), d->name() << "\n" << rep.to_text());
        for (const auto& x : valuation_universe(*d, opts(200))) {
            CHECK(same_value(v, d->width(x), d->zero()));
            CHECK(same_value(v, d->neg(x), x));
        }
    }
    auto qq = cuts_of(lex_qq());
    auto v = w_valuation(qq);
    Element lambda = qq->parse("fill(sqrt2)");
    CHECK(v.format_value(v.value(lambda)) == "(edge(1)+0)-");
    CHECK(v.lt(qq->zero(), lambda));
    // a level-0 width has w = 0-
    CHECK(same_value(v, qq->parse("cut((1,2))+"), qq->zero()));
}
