#include <doctest.h>

#include "domkit/error.hpp"
#include "extension.hpp"
#include "support.hpp"

using namespace domkit;
using namespace domkit::testing;

namespace {

Real2 q(long a, long b = 1) { return Real2(Rational(a, b)); }
Real2 r2(long a, long b, long c, long d) { return Real2(Rational(a, b), Rational(c, d)); }

struct Case {
    Group g;
    std::vector<Point> witnesses;
};

std::vector<Case> cases() {
    return {
        {Group::localized(2), {{q(1, 2)}, {q(-3, 4)}, {q(5, 8)}, {q(7, 2)}, {q(1, 6)}, {q(-11, 12)}}},
        {Group::rationals(), {{r2(0, 1, 1, 1)}, {r2(0, 1, -1, 1)}, {r2(1, 2, 1, 1)}, {r2(3, 1, -2, 3)}}},
        {lex_qq(), {{r2(0, 1, 1, 1), q(5)}, {q(1), r2(0, 1, 1, 1)}, {r2(-1, 3, 1, 1), q(0)}, {q(2), r2(0, 1, -1, 1)}}},
    };
}

std::string joined(const std::vector<ExtensionFailure>& fs) {
    std::string s;
    for (const auto& f : fs) s += f.what + "\n";
    return s;
}

}  // namespace

TEST_CASE("cuts induced by supergroup elements") {
    std::mt19937_64 rng(21);
    for (const auto& c : cases()) {
        CutEngine e(c.g);
        std::vector<GroupElement> alphas;
        for (int i = 0; i < 200; ++i) alphas.push_back(c.g.sample(rng));
        for (const auto& x0 : c.witnesses) {
            auto xs = fillers(c.g, x0, rng, 25);
            auto fs = check_fill_sets(e, x0, xs, alphas);
            CHECK_MESSAGE(fs.empty(), joined(fs));
        }
    }
}

TEST_CASE("sums of filled cuts from sums of fillers") {
    std::mt19937_64 rng(22);
    for (const auto& c : cases()) {
        CutEngine e(c.g);
        for (const auto& x0 : c.witnesses)
            for (const auto& y0 : c.witnesses) {
                auto fs = check_sum_sets(e, e.induced_cut(x0), e.induced_cut(y0), fillers(c.g, x0, rng, 12),
                                         fillers(c.g, y0, rng, 12));
                CHECK_MESSAGE(fs.empty(), joined(fs));
            }
    }
}

TEST_CASE("fillers of the integer cut 0+") {
    CutEngine z(Group::integers());
    CHECK_THROWS_AS(z.induced_cut({q(1, 2)}), DensityError);
    // 0 < x < 1
    std::vector<Point> xs{{q(1, 1000000000)}, {q(1, 3)}, {q(1, 2)}, {q(999999999, 1000000000)}};
    Cut zp = z.plus(GroupElement{{0}});
    auto fs = check_sum_sets(z, zp, zp, xs, xs);
    CHECK_MESSAGE(fs.empty(), joined(fs));
    CHECK(z.add(zp, zp) == zp);
    CHECK(z.radd(zp, zp) == z.minus(GroupElement{{2}}));
    auto s_l = [&](const GroupElement& a) {
        for (const auto& x : xs)
            if (cmp(x, a) >= 0) return true;
        return false;
    };
    CHECK(z.identify(s_l, {q(1, 2)}) == zp);
}

TEST_CASE("the non-strict difference set misses level-zero widths") {
    CutEngine e(Group::rationals());
    Point x0{r2(0, 1, 1, 1)};
    auto in_t = [&](const GroupElement& a) { return cmp(Point{Real2(0)}, a) <= 0; };
    Cut literal = e.identify([&](const GroupElement& a) { return !in_t(a); }, {Real2(0)});
    CHECK(literal == e.minus(GroupElement{{0}}));
    CHECK(e.width(e.induced_cut(x0)) == e.plus(GroupElement{{0}}));
}
