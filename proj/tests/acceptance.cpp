#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "domkit/error.hpp"
#include "domkit/valuation.hpp"
#include "extension.hpp"
#include "support.hpp"

using namespace domkit;
using namespace domkit::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

FiniteDomTable data(const std::string& name) { return load_table(std::string(DOMKIT_TEST_DATA) + "/" + name); }

CheckOptions sampled(std::size_t n, std::uint64_t seed = 0) {
    CheckOptions o;
    o.samples = n;
    o.seed = seed;
    return o;
}

// 1. the printed tables and their verdicts
Outcome printed_tables() {
    Outcome out;
    auto t0 = Clock::now();
    const std::vector<std::pair<const char*, std::vector<Axiom>>> expected{
        {"trivial3.tbl", {}},        {"trivial4.tbl", {}},          {"trivial5.tbl", {}},
        {"bad3.tbl", {Axiom::MCb}},  {"bad4a.tbl", {Axiom::MCa}},   {"bad4b.tbl", {Axiom::MCa}},
        {"nonassoc4.tbl", {Axiom::Associativity}},
    };
    for (const auto& [file, fails] : expected) {
        auto rep = validate(data(file), dom_axioms());
        out.require(rep.exhaustive, std::string(file) + " not checked exhaustively");
        out.require(rep.failures() == fails, std::string(file) + " verdict differs:\n" + rep.to_text());
    }
    double t = seconds_since(t0);
    out.require(t < 1.0, "took " + std::to_string(t) + " s");
    return out;
}

// 2. exactly one dom of each size
Outcome uniqueness() {
    Outcome out;
    for (std::size_t n = 1; n <= 6; ++n) {
        auto all = enumerate(n, dom_axioms());
        out.require(all.size() == 1 && all[0] == trivial_dom(n), "n=" + std::to_string(n));
    }
    auto t0 = Clock::now();
    auto seven = enumerate(7, dom_axioms());
    double t = seconds_since(t0);
    out.require(seven.size() == 1 && seven[0] == trivial_dom(7), "n=7");
    out.require(t < 300.0, "n=7 took " + std::to_string(t) + " s");
    return out;
}

// 3. each of MA, MB, MC(a), MC(b) fails alone somewhere; MC' is equivalent to MC(a) + MC(b)
Outcome independence() {
    Outcome out;
    auto only = [&](const Dom& d, Axiom a, const CheckOptions& o) {
        auto rep = check_axioms(d, all_axioms(), o);
        std::vector<Axiom> bad;
        for (Axiom x : rep.failures())
            if (x != Axiom::MCprime) bad.push_back(x);
        return bad == std::vector<Axiom>{a} && rep.passes(Axiom::Associativity) && rep.passes(Axiom::PA);
    };
    ShiftedGroupDom ma(Group::integers(), GroupElement{{1}});
    ShiftedGroupDom mb(Group::integers(), GroupElement{{-2}});
    out.require(only(ma, Axiom::MA, sampled(4000, 1)), "shift 1 does not isolate MA");
    out.require(only(mb, Axiom::MB, sampled(4000, 2)), "shift -2 does not isolate MB");
    out.require(only(*make_finite(data("bad3.tbl")), Axiom::MCb, {}), "bad3 does not isolate MC(b)");
    out.require(only(*make_finite(data("bad4a.tbl")), Axiom::MCa, {}), "bad4a does not isolate MC(a)");
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate(n, predom_axioms())) {
            bool mcp = validate(t, {Axiom::MCprime}).ok();
            bool mc = validate(t, {Axiom::MCa, Axiom::MCb}).ok();
            bool ab = validate(t, {Axiom::MA, Axiom::MB}).ok();
            if (ab) out.require(mcp == mc, "MC' disagrees with MC(a) + MC(b):\n" + serialize_table(t));
        }
    return out;
}

// 4. the general identities
Outcome identities() {
    Outcome out;
    auto t0 = Clock::now();
    for (std::size_t n = 1; n <= 6; ++n) {
        auto f = check_identities(*finite_dom(n), 0, 0);
        out.require(f.item == 0, "n=" + std::to_string(n) + " item " + std::to_string(f.item) + " " + f.witness);
    }
    for (const Group& g : {Group::rationals(), Group::integers(), Group::localized(2), lex_qq()}) {
        auto d = cuts_of(g);
        auto f = check_identities(*d, 10000, 0);
        out.require(f.item == 0, d->name() + " item " + std::to_string(f.item) + " " + f.witness);
    }
    double t = seconds_since(t0);
    out.require(t < 60.0, "took " + std::to_string(t) + " s");
    return out;
}

// 5. closed-form sums against the sup of shifts, and the printed values
Outcome oracle_equivalence() {
    Outcome out;
    for (const Group& g : {Group::rationals(), Group::integers(), Group::localized(2), lex_qq()}) {
        CutEngine e(g);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 10000 && out.ok; ++i) {
            Cut x = e.sample(rng), y = e.sample(rng);
            std::string w = e.format(x) + " , " + e.format(y);
            out.require(e.add(x, y) == e.oracle_sum(x, y), g.name() + " add " + w);
            out.require(e.radd(x, y) == e.oracle_radd(x, y), g.name() + " radd " + w);
            out.require(e.diff(DiffMode::Right, x, y) == e.oracle_radd(x, e.neg(y)), g.name() + " diff " + w);
            out.require(e.diff(DiffMode::Left, x, y) == e.oracle_sum(x, e.neg(y)), g.name() + " left diff " + w);
        }
    }
    CutEngine q(Group::rationals()), z(Group::integers()), z2(Group::localized(2)), qq(lex_qq());
    std::mt19937_64 rng(6);
    for (int i = 0; i < 500; ++i) {
        for (const CutEngine* e : {&q, &z, &z2}) {
            GroupElement a = e->group().sample(rng), b = e->group().sample(rng);
            GroupElement s = e->group().add(a, b);
            Cut ap = e->plus(a), am = e->minus(a), bp = e->plus(b), bm = e->minus(b);
            out.require(e->oracle_sum(ap, bp) == e->plus(s), "a+ + b+");
            out.require(e->oracle_sum(ap, bm) == e->minus(s), "a+ + b-");
            out.require(e->compare(e->oracle_sum(am, bm), e->minus(s)) <= 0, "a- + b-");
            out.require(e->oracle_radd(ap, bm) == e->plus(s), "a+ +R b-");
            out.require(e->oracle_radd(am, bm) == e->minus(s), "a- +R b-");
            out.require(e->compare(e->oracle_radd(ap, bp), e->plus(s)) >= 0, "a+ +R b+");
        }
    }
    auto eq = [&](const CutEngine& e, const Cut& c, const std::string& s) { return e.format(c) == s; };
    out.require(eq(z2, z2.oracle_sum(z2.parse("fill(1/2)"), z2.parse("fill(1/2)")), "cut(1)-"), "fill(1/2) twice");
    out.require(eq(z2, z2.oracle_sum(z2.parse("fill(1/4)"), z2.parse("fill(1/4)")), "fill(1/2)"), "fill(1/4) twice");
    Cut omega = qq.parse("edge(1)+0");
    out.require(qq.oracle_sum(omega, omega) == omega, "edge + edge");
    out.require(qq.oracle_radd(omega, qq.neg(omega)) == omega, "edge - edge");
    out.require(qq.oracle_sum(omega, qq.neg(omega)) == qq.neg(omega), "edge -L edge");
    Cut zp = z.parse("cut(0)+");
    out.require(z.oracle_sum(zp, zp) == zp, "0+ + 0+ over Z");
    out.require(z.oracle_radd(zp, zp) == z.parse("cut(2)-") && eq(z, z.parse("cut(2)-"), "cut(1)+"), "0+ +R 0+ over Z");
    auto q_dom = cuts_of(Group::rationals());
    auto z2_dom = cuts_of(Group::localized(2));
    Element x = q_dom->parse("cut(0)+"), y = q_dom->parse("cut(0)-");
    out.require(q_dom->format(deduction_lhs(*q_dom, x, y, 1, 0, 1)) == "cut(0)-", "strictness over Q, lhs");
    out.require(q_dom->format(deduction_rhs(*q_dom, x, y, 1, 0)) == "cut(0)+", "strictness over Q, rhs");
    Element h = z2_dom->parse("fill(1/2)");
    out.require(z2_dom->format(deduction_lhs(*z2_dom, h, h, 0, 1, 2)) == "cut(0)-", "strictness over Zloc(2), lhs");
    out.require(z2_dom->format(deduction_rhs(*z2_dom, h, h, 0, 1)) == "cut(0)+", "strictness over Zloc(2), rhs");
    return out;
}

int sign_of(const Dom& d, const Element& x) {
    Element up = d.add(x, d.delta()), down = d.sub(x, d.delta());
    if (d.lt(up, x) && d.eq(x, down)) return 1;
    if (d.eq(up, x) && d.lt(x, down)) return -1;
    if (d.eq(up, x) && d.eq(x, down)) return 0;
    throw std::logic_error("no signature case applies to " + d.format(x));
}

// 6. signature rule
Outcome signature_rule() {
    Outcome out;
    struct Setting {
        Group g;
        std::vector<std::string> in_group, outside;
    };
    const std::vector<Setting> settings{
        {Group::rationals(), {"-2", "-1/2", "0", "1/3", "1", "3/2"}, {"sqrt2", "-sqrt2", "1-sqrt2", "1/2*sqrt2"}},
        {Group::localized(2), {"-1", "-1/3", "0", "1/3", "2/3", "1"}, {"1/2", "-1/2", "1/4", "3/4", "-5/4", "sqrt2"}},
    };
    std::vector<int> hits(9, 0);
    bool row7_zero = false, row7_minus = false;
    for (const auto& s : settings) {
        auto d = cuts_of(s.g);
        std::vector<Element> xs;
        for (const auto& a : s.in_group) {
            xs.push_back(d->parse("cut(" + a + ")-"));
            xs.push_back(d->parse("cut(" + a + ")+"));
        }
        for (const auto& a : s.outside) xs.push_back(d->parse("fill(" + a + ")"));
        for (const auto& x : xs) {
            out.require(in_m0(*d, x), d->format(x) + " is not of width zero");
            out.require(sign_of(*d, d->neg(x)) == -sign_of(*d, x), "sign of -" + d->format(x));
            out.require(static_cast<int>(signature(*d, x) == Signature::Plus) -
                                static_cast<int>(signature(*d, x) == Signature::Minus) ==
                            sign_of(*d, x),
                        "library signature of " + d->format(x));
        }
        for (const auto& x : xs)
            for (const auto& y : xs) {
                int a = sign_of(*d, x), b = sign_of(*d, y), c = sign_of(*d, d->add(x, y));
                std::string w = d->format(x) + " , " + d->format(y);
                auto row = [&](int k, bool applies, bool holds) {
                    if (!applies) return;
                    ++hits[k];
                    out.require(holds, "row " + std::to_string(k) + ": " + w);
                };
                row(1, a == 1 && b == 1, c == 1);
                row(2, a == -1 && b == -1, c == -1);
                row(3, a <= 0, c <= 0);
                row(4, a == 1 && b >= 0, c >= 0);
                row(5, a == 1 && b == 0, c == 0);
                row(6, a == -1 && b == 0, c == 0);
                row(7, a == 0 && b == 0, c <= 0);
                row(8, a == 1 && b == -1, c == -1);
                if (a == 0 && b == 0) (c == 0 ? row7_zero : row7_minus) = true;
            }
    }
    for (int k = 1; k <= 8; ++k) out.require(hits[k] > 0, "row " + std::to_string(k) + " never applies");
    out.require(row7_zero && row7_minus, "row 7 lacks one of its outcomes");
    auto z2 = cuts_of(Group::localized(2));
    Element h = z2->parse("fill(1/2)"), f = z2->parse("fill(1/4)");
    out.require(z2->format(z2->add(h, h)) == "cut(1)-" && sign_of(*z2, z2->add(h, h)) == -1, "fill(1/2) twice");
    out.require(z2->format(z2->add(f, f)) == "fill(1/2)" && sign_of(*z2, z2->add(f, f)) == 0, "fill(1/4) twice");
    return out;
}

// 7. constructions
Outcome constructions() {
    Outcome out;
    auto dom_ok = [&](const DomPtr& d, const CheckOptions& o = {}) {
        auto rep = check_axioms(*d, all_axioms(), o);
        out.require(rep.ok(), d->name() + " is not a dom:\n" + rep.to_text());
    };
    for (std::size_t n = 1; n <= 7; ++n) {
        auto m = finite_dom(n);
        dom_ok(dual(m));
        dom_ok(infinity_extension(m));
        if (n % 2 == 0) dom_ok(shift(m));
        else dom_ok(cuts_of_dom(m));
        auto q = quotient_equiv(m);
        dom_ok(q.dom);
        out.require(verify_hom(q.map).ok, "quotient map of " + m->name());
        const auto all = *m->elements();
        for (const auto& k : widths(*m, all)) {
            if (!m->lt(m->width(m->zero()), k)) continue;
            auto g = split_at_width(m, k);
            dom_ok(g);
            HomCandidate h{m, g,
                           [m, k](const Element& x) {
                               return m->lt(m->width(x), k) ? GluedDom::lower(x) : GluedDom::upper(x);
                           },
                           HomKind::Dom, {}};
            auto rep = verify_hom(h);
            out.require(rep.ok && rep.injective && g->elements()->size() == n,
                        "regluing " + m->name() + " at " + m->format(k));
            auto gd = std::dynamic_pointer_cast<const GluedDom>(g);
            std::vector<Element> lower, ws;
            for (const auto& x : all)
                if (m->lt(m->width(x), k)) lower.push_back(x);
                else ws.push_back(m->width(x));
            out.require(gd && check_compatible(gd->family(), lower, ws), "family of " + m->name() + " not compatible");
        }
    }
    auto cz = cuts_of(Group::integers());
    dom_ok(shift(cz), sampled(1500));
    dom_ok(dual(cuts_of(Group::rationals())), sampled(1500));
    for (std::size_t n : {4, 6}) {
        auto m = finite_dom(n);
        auto c = collapse(m, h_membership(m));
        dom_ok(c.dom);
        auto rep = verify_hom(c.eta);
        out.require(rep.ok && rep.injective && c.dom->elements()->size() == n, "collapse of " + m->name());
    }
    out.require(tabulate(*cuts_of_dom(finite_dom(3))) == trivial_dom(4), "cuts of trivial 3");
    auto alt = check_axioms(*cuts_of_dom_alternative(finite_dom(3)), dom_axioms());
    bool witness = false;
    for (const auto& r : alt.results)
        if (r.axiom == Axiom::MCa) witness = r.witness == "x=c0 y=c1";
    out.require(alt.failures() == std::vector<Axiom>{Axiom::MCa} && witness, "alternative plus:\n" + alt.to_text());
    auto mp = mu_product(finite_dom(3), finite_dom(4));
    dom_ok(mp);
    CutEngine e(Group::rationals());
    DomPtr q = std::make_shared<CutDom>(e);
    DomPtr t = std::make_shared<TildeDom>(e);
    auto ins = inseminate(q, h_membership(q), "Q");
    dom_ok(ins, sampled(2000));
    HomCandidate h{t, ins,
                   [&e](const Element& x) {
                       return x.is_group() ? GluedDom::lower(Element::cut(e.plus(x.as_group()))) : GluedDom::upper(x);
                   },
                   HomKind::Dom, test_universe(*t, 1000, 3)};
    auto rep = verify_hom(h, sampled(2000));
    out.require(rep.ok && rep.injective, "insemination is not tilde(Q)");
    auto fp = fibered_product(std::make_shared<GroupDom>(Group::rationals()),
                              [](const Element& x) { return x.as_group().coords[0] == 0; }, finite_dom(2));
    dom_ok(fp, sampled(1500));
    return out;
}

// 8. finite doms inside cut doms
Outcome embeddings() {
    Outcome out;
    for (std::size_t n = 1; n <= 6; ++n) {
        auto h = embed_finite(n);
        auto rep = verify_hom(h);
        out.require(h.universe.empty() && rep.ok && rep.injective, "embedding of " + std::to_string(n));
    }
    return out;
}

bool same_value(const Valuation& v, const Element& x, const Element& y) {
    return v.value_le(v.value(x), v.value(y)) && v.value_le(v.value(y), v.value(x));
}

// 9. valuations
Outcome valuations() {
    Outcome out;
    CheckOptions o = sampled(300, 9);
    std::vector<DomPtr> ds;
    for (std::size_t n = 1; n <= 6; ++n) ds.push_back(finite_dom(n));
    ds.push_back(cuts_of(Group::rationals()));
    ds.push_back(cuts_of(lex_qq()));
    for (const DomPtr& d : ds) {
        auto width = width_valuation(d);
        auto natural = natural_valuation(d);
        out.require(check_valuation(width, all_valuation_axioms(), o).passes(ValuationAxiom::Strong), "width strong on " + d->name());
        out.require(check_valuation(natural, {ValuationAxiom::V1, ValuationAxiom::V2, ValuationAxiom::V3, ValuationAxiom::V4}, o).ok(),
                    "natural on " + d->name());
        auto u = valuation_universe(*d, sampled(120, 9));
        for (const auto& x : u)
            for (const auto& y : u) {
                out.require(same_value(width, d->radd(x, y), d->add(x, y)), "width of x +R y on " + d->name());
                for (const auto* v : {&width, &natural})
                    if (v->lt(x, y)) out.require(same_value(*v, d->add(x, y), y), v->name + " of a dominated sum on " + d->name());
            }
    }
    for (std::size_t n = 1; n <= 6; ++n) {
        auto d = finite_dom(n);
        for (const auto& v : {trivial_valuation(d), two_valued_valuation(d), width_valuation(d), natural_valuation(d),
                              w_valuation(d)}) {
            auto rep = check_valuation(v, all_valuation_axioms());
            out.require(rep.passes(ValuationAxiom::V4) == coarsening_of(natural_valuation(d), v),
                        "convexity criterion for " + v.name + " on " + d->name());
            out.require(rep.passes(ValuationAxiom::Strong) == coarsening_of(width_valuation(d), v),
                        "strength criterion for " + v.name + " on " + d->name());
        }
    }
    auto qq = cuts_of(lex_qq());
    auto w = w_valuation(qq);
    Element lambda = qq->parse("fill(sqrt2)");
    out.require(w.lt(qq->zero(), lambda), "w of the witness is not above 0-");
    out.require(w.format_value(w.value(lambda)) == "(edge(1)+0)-", "w of the witness is " + w.format_value(w.value(lambda)));
    return out;
}

// 10. cuts from supergroup elements
Outcome extensions() {
    Outcome out;
    auto r2 = [](long a, long b, long c, long d) { return Real2(Rational(a, b), Rational(c, d)); };
    auto q = [](long a, long b = 1) { return Real2(Rational(a, b)); };
    const std::vector<std::pair<Group, std::vector<Point>>> cases{
        {Group::localized(2), {{q(1, 2)}, {q(-3, 4)}, {q(5, 8)}, {q(7, 2)}, {q(1, 6)}}},
        {Group::rationals(), {{r2(0, 1, 1, 1)}, {r2(0, 1, -1, 1)}, {r2(1, 2, 1, 1)}, {r2(3, 1, -2, 3)}}},
        {lex_qq(), {{r2(0, 1, 1, 1), q(5)}, {q(1), r2(0, 1, 1, 1)}, {q(2), r2(0, 1, -1, 1)}}},
    };
    std::mt19937_64 rng(10);
    auto take = [&](const std::vector<ExtensionFailure>& fs) {
        for (const auto& f : fs) out.require(false, f.what);
    };
    for (const auto& [g, witnesses] : cases) {
        CutEngine e(g);
        std::vector<GroupElement> alphas;
        for (int i = 0; i < 200; ++i) alphas.push_back(g.sample(rng));
        for (const auto& x0 : witnesses) {
            take(check_fill_sets(e, x0, fillers(g, x0, rng, 20), alphas));
            for (const auto& y0 : witnesses)
                take(check_sum_sets(e, e.induced_cut(x0), e.induced_cut(y0), fillers(g, x0, rng, 10), fillers(g, y0, rng, 10)));
        }
    }
    CutEngine z(Group::integers());
    bool density = false;
    try {
        z.induced_cut({q(1, 2)});
    } catch (const DensityError&) {
        density = true;
    }
    out.require(density, "1/2 over Z did not raise a density error");
    std::vector<Point> xs{{q(1, 1000000000)}, {q(1, 2)}, {q(999999999, 1000000000)}};
    Cut zp = z.plus(GroupElement{{0}});
    take(check_sum_sets(z, zp, zp, xs, xs));
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"printed tables", printed_tables},
        {"uniqueness", uniqueness},
        {"axiom independence", independence},
        {"general identities", identities},
        {"oracle equivalence", oracle_equivalence},
        {"signature rule", signature_rule},
        {"construction contracts", constructions},
        {"finite embeddings", embeddings},
        {"valuations", valuations},
        {"group extensions", extensions},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << std::fixed;
        line.precision(2);
        line << seconds_since(t0) << " s)";
        if (!o.ok) line << ": " << o.detail;
        std::cout << line.str() << std::endl;
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
