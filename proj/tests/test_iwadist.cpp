#include <catch_amalgamated.hpp>

#include <random>

#include "iwlog/iwadist.hpp"

using namespace iwlog;

namespace {

IwaSeries ints(const Ctx& c, std::initializer_list<i64> v) { return IwaSeries::poly(c, poly::from_ints(c, v)); }

IwaSeries random_poly(const Ctx& c, std::mt19937_64& rng, int deg) {
    PVec v;
    for (int i = 0; i < deg; ++i) v.push_back(Padic::from_int(c, static_cast<i64>(rng() % 41) - 20));
    return IwaSeries::poly(c, v);
}

} // namespace

TEST_CASE("cyclotomic polynomials") {
    auto c = make_ctx(3, 20);
    CHECK((omega(c, 1) - ints(c, {0, 3, 3, 1})).is_zero());
    CHECK((phi_cyc(c, 1) - ints(c, {3, 3, 1})).is_zero());
    CHECK((divide_exact(omega(c, 1), IwaSeries::X(c)) - phi_cyc(c, 1)).is_zero());
    for (u64 p : {3, 5})
        for (int n = 0; n <= 4; ++n) {
            auto cp = make_ctx(p, 20);
            IwaSeries prod = IwaSeries::X(cp);
            for (int m = 1; m <= n; ++m) prod = prod * phi_cyc(cp, m);
            CHECK((omega(cp, n) - prod).is_zero());
        }
}

TEST_CASE("twists") {
    auto c = make_ctx(3, 20);
    Padic u = Padic::from_int(c, 4);
    CHECK((twist(IwaSeries::X(c), 1) - IwaSeries::poly(c, PVec{u - Padic::one(c), u})).is_zero());
    CHECK((delta(c, 1) - IwaSeries::X(c)).is_zero());
    Padic ui = u.recip();
    CHECK((delta(c, 2) - IwaSeries::X(c) * IwaSeries::poly(c, PVec{ui - Padic::one(c), ui})).is_zero());
    std::mt19937_64 rng(2);
    for (int it = 0; it < 5; ++it) {
        IwaSeries F = random_poly(c, rng, 8);
        CHECK((twist(twist(F, 1), -1) - F).is_zero());
        for (int t = 0; t <= 2; ++t) CHECK((eval_at(twist(F, 1), {t, 0}) - eval_at(F, {t, 1})).is_zero());
    }
    for (int n = 0; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m) {
            IwaSeries prod = delta(c, m);
            for (int k = 1; k <= n; ++k) prod = prod * phi_tw(c, k, m);
            CHECK((omega_tw(c, n, m) - prod).is_zero());
        }
}

TEST_CASE("half-logarithms") {
    auto c = make_ctx(3, 20);
    for (int n = 1; n <= 3; ++n) {
        IwaSeries lhs = halflog(c, Sign::Plus, 1, n) * halflog(c, Sign::Minus, 1, n) * IwaSeries::X(c);
        CHECK((lhs - omega(c, n) * Padic::from_int(c, 3).pow(-n)).is_zero());
    }
    CHECK(eval_at(halflog(c, Sign::Plus, 1, 2), {2, 0}).is_zero());
    CHECK_FALSE(eval_at(halflog(c, Sign::Minus, 1, 2), {2, 0}).is_zero());
    CHECK(halflog(c, Sign::Plus, 2, 3).growth().num == 2);
    CHECK(halflog(c, Sign::Plus, 2, 3).growth().den == 2);
}

TEST_CASE("evaluation at character points") {
    auto c = make_ctx(3, 16);
    CHECK(eval_at(IwaSeries::X(c), {0, 0}).is_zero());
    for (int n = 0; n <= 3; ++n) CHECK(eval_at(omega(c, n), {n, 0}).is_zero());
    std::mt19937_64 rng(4);
    for (int it = 0; it < 5; ++it) {
        IwaSeries F = random_poly(c, rng, 7), G = random_poly(c, rng, 9);
        for (CharPoint pt : {CharPoint{1, 0}, CharPoint{2, 1}, CharPoint{3, 2}})
            CHECK((eval_at(F * G, pt) - eval_at(F, pt) * eval_at(G, pt)).is_zero());
    }
}

TEST_CASE("level ring round trips") {
    auto c = make_ctx(3, 20);
    auto R = level_ring(c, 3, 2);
    PVec F;
    for (int i = 0; i < 54; ++i) F.push_back(Padic::from_int(c, (i * i * 7 + 3) % 101 - 50));
    CHECK(poly::is_zero(poly::sub(F, R->from_values(R->values(F)))));
    CHECK(poly::is_zero(poly::sub(F, R->from_components(R->components(F)))));
    auto V = R->values(F);
    CHECK((eval_at(IwaSeries::poly(c, F), {2, 1}) - V[2][1]).is_zero());
}

TEST_CASE("equality up to units") {
    auto c = make_ctx(5, 20);
    std::mt19937_64 rng(9);
    IwaSeries G = random_poly(c, rng, 6);
    G.coeffs()[0] = Padic::one(c);
    auto w = equal_up_to_unit_mod(G * Padic::from_int(c, 3), G, 2);
    REQUIRE(w);
    REQUIRE(w->integral);
    CHECK(w->unit[0] == Padic::from_int(c, 3));
    IwaSeries F = ints(c, {1, 1, 1}) * G;
    auto w2 = equal_up_to_unit_mod(F, G, 2);
    REQUIRE(w2);
    REQUIRE(w2->integral);
    auto R = level_ring(c, 2, 1);
    CHECK(poly::is_zero(poly::sub(R->mul(w2->unit, R->reduce(G.coeffs())), R->reduce(F.coeffs()))));
    CHECK_FALSE(equal_up_to_unit_mod(G * Padic::from_int(c, 5), G, 2));
}
