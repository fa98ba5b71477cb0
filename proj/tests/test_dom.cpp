#include <doctest.h>

#include "domkit/error.hpp"
#include "support.hpp"

using namespace domkit;
using namespace domkit::testing;

namespace {

std::vector<DomPtr> sampled_carriers() {
    return {cuts_of(Group::rationals()), cuts_of(Group::integers()), cuts_of(Group::localized(2)), cuts_of(lex_qq()),
            tilde_of(Group::rationals()), tilde_of(Group::integers()),
            std::make_shared<GroupDom>(Group::lex({Group::integers(), Group::rationals()}))};
}

std::vector<Element> universe(const Dom& d, std::size_t n = 300) { return test_universe(d, n, 7); }

}  // namespace

TEST_CASE("derived operations") {
    for (std::size_t n = 1; n <= 6; ++n) {
        auto d = finite_dom(n);
        CHECK(d->le(d->zero(), d->width(d->zero())));
        CHECK(d->width(d->zero()) == d->radd(d->zero(), d->zero()));
    }
    auto g = std::make_shared<GroupDom>(Group::rationals());
    CHECK(g->delta() == g->zero());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        Element x = g->sample(rng), y = g->sample(rng);
        CHECK(g->radd(x, y) == g->add(x, y));
        CHECK(iterate(*g, x, x, 3, IterMode::ScaleN) == g->add(g->add(x, x), x));
        CHECK(iterate(*g, x, y, 0, IterMode::SubN) == x);
        CHECK(iterate(*g, x, y, 0, IterMode::AddN) == x);
    }
    auto f4 = finite_dom(4);
    CHECK(f4->abs(f4->delta()) == f4->zero());
    CHECK_THROWS_AS(iterate(*g, g->zero(), g->zero(), 0, IterMode::ScaleN), PreconditionError);
}

TEST_CASE("iterated differences compose") {
    for (const DomPtr& d : sampled_carriers()) {
        std::mt19937_64 rng(2);
        for (int i = 0; i < 50; ++i) {
            Element x = d->sample(rng), y = d->sample(rng);
            for (long n = 0; n <= 2; ++n)
                for (long m = 0; m <= 2; ++m) {
                    CHECK(iterate(*d, iterate(*d, x, y, n, IterMode::SubN), y, m, IterMode::SubN) ==
                          iterate(*d, x, y, n + m, IterMode::SubN));
                    CHECK(iterate(*d, iterate(*d, x, y, n, IterMode::AddN), y, m, IterMode::AddN) ==
                          iterate(*d, x, y, n + m, IterMode::AddN));
                }
        }
    }
}

TEST_CASE("elementary identities") {
    for (const DomPtr& d : sampled_carriers()) {
        for (const auto& x : universe(*d)) {
            CHECK(d->radd(x, d->delta()) == x);
            CHECK(d->sub(x, d->zero()) == x);
            CHECK(d->sub(d->delta(), x) == d->neg(x));
            CHECK(d->neg(d->neg(x)) == x);
        }
    }
}

TEST_CASE("the general identity list holds on every carrier") {
    for (std::size_t n = 1; n <= 6; ++n) {
        auto f = check_identities(*finite_dom(n), 0, 0);
        CHECK_MESSAGE(f.item == 0, "n=" << n << " item " << f.item << " " << f.witness);
    }
    for (const DomPtr& d : sampled_carriers()) {
        auto f = check_identities(*d, 2000, 3);
        CHECK_MESSAGE(f.item == 0, d->name() << " item " << f.item << " " << f.witness);
    }
}

TEST_CASE("the identity checker rejects a structure that is not a dom") {
    auto bad = make_finite(load_table(DOMKIT_TEST_DATA "/bad3.tbl"));
    CHECK(check_identities(*bad, 0, 0).item != 0);
}

TEST_CASE("axiom checks on infinite carriers") {
    CheckOptions opt;
    opt.samples = 400;
    for (const DomPtr& d : sampled_carriers()) {
        auto rep = check_axioms(*d, all_axioms(), opt);
        CHECK_MESSAGE(rep.ok(), d->name() << "\n" << rep.to_text());
        CHECK_FALSE(rep.exhaustive);
    }
}

TEST_CASE("types") {
    CHECK(classify_type(*cuts_of(Group::integers())) == DomType::Second);
    CHECK(classify_type(*cuts_of(Group::rationals())) == DomType::Third);
    CHECK(classify_type(*cuts_of(Group::localized(2))) == DomType::Third);
    CHECK(classify_type(*std::make_shared<GroupDom>(Group::integers())) == DomType::First);
    // tilde(G) has delta = 0
    CHECK(classify_type(*tilde_of(Group::integers())) == DomType::First);
    CHECK(classify_type(*tilde_of(Group::rationals())) == DomType::First);
    for (std::size_t n = 1; n <= 7; ++n) {
        auto d = finite_dom(n);
        CHECK(classify_type(*d) == (n % 2 == 1 ? DomType::First : DomType::Third));
    }
    CHECK(to_string(DomType::Second) == "second");
}

TEST_CASE("first and second type lemmas") {
    for (const DomPtr& d : {tilde_of(Group::rationals()), tilde_of(Group::integers())}) {
        for (const auto& x : universe(*d))
            if (in_m0(*d, x)) CHECK(d->add(x, d->neg(x)) == d->zero());
    }
    auto z = cuts_of(Group::integers());
    for (const auto& x : universe(*z)) {
        if (!in_m0(*z, x)) continue;
        CHECK(z->lt(x, z->sub(x, z->delta())));
        CHECK(z->lt(z->add(x, z->delta()), x));
        CHECK(z->add(x, z->sub(z->neg(x), z->delta())) == z->zero());
    }
}

TEST_CASE("class representatives") {
    auto q = cuts_of(Group::rationals());
    CHECK(f_plus(*q, q->parse("cut(1/2)-")) == q->parse("cut(1/2)+"));
    CHECK(f_minus(*q, q->parse("cut(1/2)+")) == q->parse("cut(1/2)-"));
    CHECK(multiplicity(*q, q->parse("cut(1/2)+")) == 2);
    CHECK(multiplicity(*q, q->parse("fill(sqrt2)")) == 1);
    CHECK(equivalent(*q, q->parse("cut(3)-"), q->parse("cut(3)+")));
    CHECK_FALSE(equivalent(*q, q->parse("cut(3)-"), q->parse("cut(4)-")));
    auto qq = cuts_of(lex_qq());
    Element om = qq->parse("edge(1)+5");
    CHECK(equiv_class(*qq, om).size() == 1);
    for (const DomPtr& d : {cuts_of(Group::integers()), DomPtr(tilde_of(Group::rationals())), finite_dom(5)}) {
        for (const auto& x : universe(*d)) CHECK(f_plus(*d, x) == x);
    }
    for (const DomPtr& d : {q, qq, finite_dom(6)}) {
        auto u = universe(*d);
        for (const auto& x : u) {
            Element fx = f_plus(*d, x);
            CHECK(f_plus(*d, fx) == fx);
            CHECK(d->le(x, fx));
            CHECK(d->le(fx, d->sub(x, d->delta())));
            CHECK(d->le(f_minus(*d, x), x));
        }
        for (std::size_t i = 0; i + 1 < u.size(); ++i) CHECK(d->le(f_plus(*d, u[i]), f_plus(*d, u[i + 1])));
    }
}

TEST_CASE("signatures inside a dom") {
    auto q = cuts_of(Group::rationals());
    CHECK(signature(*q, q->zero()) == Signature::Plus);
    CHECK(signature(*q, q->delta()) == Signature::Minus);
    CHECK(signature(*q, q->parse("fill(-sqrt2)")) == Signature::Zero);
    CHECK(signature(*cuts_of(Group::integers()), cuts_of(Group::integers())->parse("cut(2)+")) == Signature::Infinity);
    CHECK(signature(*finite_dom(5), Element::index(2)) == Signature::Spade);
    auto qq = cuts_of(lex_qq());
    // measured inside M^{>= width}
    CHECK(signature(*qq, qq->parse("edge(1)+2")) == Signature::Plus);
    CHECK(signature(*qq, qq->parse("edge(1)-2")) == Signature::Minus);
    CHECK(signature(*qq, qq->parse("fill(sqrt2)")) == Signature::Zero);
    for (const auto& x : universe(*q)) {
        if (!in_m0(*q, x)) continue;
        Signature s = signature(*q, x);
        CHECK(s == std::dynamic_pointer_cast<const CutDom>(q)->engine().signature(x.as_cut()));
        if (s != Signature::Zero) CHECK((s == Signature::Plus) == (f_plus(*q, x) == x));
    }
}

TEST_CASE("widths and special subsets") {
    auto qq = cuts_of(lex_qq());
    auto w = widths(*qq, universe(*qq));
    REQUIRE(w.size() == 3);
    CHECK(qq->format(w[0]) == "cut((0,0))+");
    CHECK(qq->format(w[1]) == "edge(1)+0");
    CHECK(qq->format(w[2]) == "+inf");
    for (std::size_t n = 1; n <= 6; ++n) {
        auto d = finite_dom(n);
        const auto all = *d->elements();
        for (const auto& x : all) CHECK(d->width(x) == d->abs(x));
        if (classify_type(*d) == DomType::First) CHECK(extensible_group(*d, *d->elements()).size() == 1);
    }
    auto q = cuts_of(Group::rationals());
    CHECK_THROWS_AS(double_points(*cuts_of(Group::integers()), universe(*q)), PreconditionError);
    auto f4 = finite_dom(4);
    CHECK(double_points(*f4, *f4->elements()) == std::vector<Element>{Element::index(1), Element::index(2)});
    CHECK(h_group(*f4, *f4->elements()) == std::vector<Element>{Element::index(2)});
}

TEST_CASE("double points are closed under sums") {
    auto q = cuts_of(Group::rationals());
    auto u = universe(*q, 200);
    auto in_d = [&](const Element& x) { return in_m0(*q, x) && multiplicity(*q, x) == 2; };
    for (const auto& x : u) {
        if (!in_d(x)) continue;
        for (const auto& y : u) {
            if (!in_m0(*q, y)) continue;
            CHECK(in_d(q->add(x, y)) == in_d(y));
        }
    }
}

TEST_CASE("balls around a width are closed") {
    for (const DomPtr& d : {cuts_of(lex_qq()), cuts_of(Group::rationals()), finite_dom(6)}) {
        auto u = universe(*d, 120);
        for (const auto& a : widths(*d, u)) {
            std::vector<Element> ball;
            for (const auto& y : u)
                if (d->le(d->abs(y), a)) ball.push_back(y);
            for (const auto& x : ball) {
                CHECK(d->le(d->abs(d->neg(x)), a));
                for (const auto& y : ball) CHECK(d->le(d->abs(d->add(x, y)), a));
            }
        }
    }
}

TEST_CASE("associated groups") {
    CHECK(associated_group(finite_dom(4)).description == "trivial group");
    CHECK(associated_group(std::make_shared<GroupDom>(Group::rationals())).description == "Q");
    CHECK(associated_group(cuts_of(Group::integers())).description.find("minus shifted") != std::string::npos);
    CHECK(associated_group(cuts_of(Group::rationals())).description.rfind("dense", 0) == 0);
}

TEST_CASE("properness") {
    for (std::size_t n = 1; n <= 6; ++n) CHECK(is_proper(*finite_dom(n)) == (n <= 4));
    CHECK(is_proper(*tilde_of(Group::rationals())));
    CHECK_FALSE(is_strongly_proper(*tilde_of(Group::rationals())));
    CHECK(is_strongly_proper(*cuts_of(Group::integers())));
    CHECK_THROWS_AS(is_proper(*std::make_shared<GroupDom>(Group::rationals())), PreconditionError);
}

TEST_CASE("lambda map on cuts of positive width") {
    auto qq = std::make_shared<CutDom>(CutEngine(lex_qq()));
    const CutEngine& e = qq->engine();
    std::mt19937_64 rng(3);
    std::vector<Cut> seen;
    for (int i = 0; i < 200; ++i) {
        Cut a = e.sample(rng);
        if (!qq->lt(qq->zero(), qq->width(Element::cut(a)))) continue;
        Cut l = lambda_map(*qq, a);
        CHECK(l == a);
        CHECK(lambda_map(*qq, e.neg(a)) == e.neg(l));
        seen.push_back(a);
    }
    CHECK(seen.size() > 20);
    CHECK_THROWS_AS(lambda_map(*qq, e.parse("cut((1,1))+")), PreconditionError);
}

TEST_CASE("homomorphism checks") {
    auto zg = std::make_shared<GroupDom>(Group::integers());
    auto zc = cuts_of(Group::integers());
    auto zt = tilde_of(Group::integers());
    const CutEngine& e = std::dynamic_pointer_cast<const CutDom>(zc)->engine();
    HomCandidate plus{zg, zc, [&e](const Element& x) { return Element::cut(e.plus(x.as_group())); }, HomKind::Dom,
                      test_universe(*zg, 100, 1)};
    auto rep = verify_hom(plus);
    CHECK_FALSE(rep.ok);
    CHECK(rep.injective);

    HomCandidate incl{zg, zt, [](const Element& x) { return x; }, HomKind::Dom, test_universe(*zg, 100, 1)};
    CHECK(verify_hom(incl).ok);

    auto r2 = verify_hom(embed_finite(4));
    CHECK(r2.ok);
    CHECK(r2.injective);
}
