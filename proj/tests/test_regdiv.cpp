#include <catch_amalgamated.hpp>

#include <random>

#include "iwlog/regdiv.hpp"

using namespace iwlog;

namespace {

struct Ring {
    Ctx c = make_ctx(3, 20);
    int nv = 2, M = 6;
    MSeries x0 = MSeries::var(c, nv, M, 0), x1 = MSeries::var(c, nv, M, 1);
    MSeries one = MSeries::constant(c, nv, M, Padic::one(c));
    std::mt19937_64 rng{17};
    MSeries random(bool unit_const) {
        MSeries s(c, nv, M);
        for (auto& x : s.coeffs()) x = Padic::from_int(c, static_cast<i64>(rng() % 7) - 3);
        if (unit_const) s.coeffs()[0] = Padic::one(c);
        return s;
    }
    SpecFamily family(int k) {
        SpecFamily f;
        for (int i = 0; i < k; ++i) f.points.push_back(Padic::from_int(c, 3 * (i + 1) + 81 * static_cast<i64>(rng() % 1000)));
        return f;
    }
};

bool mseries_eq(const MSeries& a, const MSeries& b) { return (a - b).is_zero(); }

} // namespace

TEST_CASE("specialization") {
    Ring R;
    Padic a = Padic::from_int(R.c, 6);
    MSeries s = specialize(R.x0, a);
    CHECK(s.coeffs()[0] == a);
    CHECK(specialize(R.x0 - R.one * a, a).is_zero());
    for (int it = 0; it < 5; ++it) {
        MSeries F = R.random(false), G = R.random(false);
        CHECK(mseries_eq(specialize(F * G, a), specialize(F, a) * specialize(G, a)));
        CHECK(mseries_eq(specialize(F + G, a), specialize(F, a) + specialize(G, a)));
    }
}

TEST_CASE("truncated division") {
    Ring R;
    auto d = divides_trunc(R.one + R.x0, R.one - R.x0 * R.x0);
    REQUIRE(d.H);
    CHECK(mseries_eq(*d.H, R.one - R.x0));
    for (int it = 0; it < 10; ++it) {
        MSeries F = R.random(true), H = R.random(false);
        auto r = divides_trunc(F, F * H);
        REQUIRE(r.H);
        CHECK(mseries_eq(*r.H, H));
    }
    MSeries F = R.x0 + R.x1 * Padic::from_int(R.c, 3);
    MSeries top = R.x1;
    for (int i = 1; i < R.M - 1; ++i) top = top * R.x1;
    auto bad = divides_trunc(F, F * R.random(true) + top);
    CHECK_FALSE(bad.H);
    CHECK(bad.obstructed_degree == R.M - 1);
}

TEST_CASE("Chevalley-style checker") {
    Ring R;
    MSeries F = R.random(false) * R.x1 * R.x1 + R.x1 + R.x0 * Padic::from_int(R.c, 3) + R.x0 * R.x0;
    MSeries H = R.random(true);
    auto rep = chevalley_check(F, F * H, R.family(10));
    CHECK(rep.all_pass());
    CHECK(rep.direct_ok);
    auto neg = chevalley_check(F, R.x0 + R.x1 * R.x1 * R.random(false), R.family(10));
    CHECK_FALSE(neg.c_all);
    CHECK(neg.first_failure >= 0);
    // a unit F divides everything: hypothesis (c) cannot fail
    auto unit = chevalley_check(R.one + R.x1, R.one + R.x0, R.family(10));
    CHECK(unit.c_all);
    SpecFamily dup{{Padic::from_int(R.c, 3), Padic::from_int(R.c, 3)}};
    CHECK_THROWS_AS(chevalley_check(F, F, dup), Error);
    SpecFamily unitpt{{Padic::from_int(R.c, 2)}};
    CHECK_THROWS_AS(chevalley_check(F, F, unitpt), Error);
}

TEST_CASE("products of x0 - a_i shrink m-adically") {
    auto c = make_ctx(3, 20);
    SpecFamily fam;
    for (int i = 1; i <= 12; ++i) fam.points.push_back(Padic::from_int(c, 3 * i + 27 * i * i));
    for (std::size_t n = 1; n <= 12; ++n) {
        MSeries g = family_product(c, fam, n, 14);
        const auto& B = g.basis();
        for (std::size_t i = 0; i < B.size(); ++i)
            if (!g.coeffs()[i].is_zero()) CHECK(g.coeffs()[i].val_units() >= static_cast<i64>(n) - B.degree(i));
    }
}
