#include <catch_amalgamated.hpp>

#include <random>

#include "iwlog/cycser.hpp"

using namespace iwlog;

namespace {

PiSeries random_series(const Ctx& c, std::mt19937_64& rng, std::size_t cap) {
    PVec v;
    for (std::size_t i = 0; i < cap; ++i) v.push_back(Padic::from_int(c, static_cast<i64>(rng() % 61) - 30));
    return PiSeries(c, v, cap);
}

// (1+pi)^a - 1 by repeated multiplication
PiSeries power_minus_one(const Ctx& c, u64 a, std::size_t cap) {
    PiSeries x = PiSeries(c, PVec{Padic::one(c), Padic::one(c)}, cap);
    PiSeries r = PiSeries::constant(c, Padic::one(c), cap);
    for (u64 i = 0; i < a; ++i) r = r * x;
    return r - PiSeries::constant(c, Padic::one(c), cap);
}

} // namespace

TEST_CASE("Frobenius") {
    auto c = make_ctx(3, 12);
    const std::size_t cap = 20;
    PiSeries pi = PiSeries::pi(c, cap);
    CHECK(frobenius(pi) == power_minus_one(c, 3, cap));
    PiSeries one_pi(c, PVec{Padic::one(c), Padic::one(c)}, cap);
    CHECK(frobenius(one_pi) == PiSeries::one_plus_pi_pow(c, 3, cap));
    PiSeries q = q_series(c, cap);
    CHECK(q * pi == power_minus_one(c, 3, cap));
    CHECK(frobenius(q) * frobenius(pi) == frobenius(frobenius(pi)));
}

TEST_CASE("psi is a left inverse of phi") {
    auto c = make_ctx(3, 12);
    std::mt19937_64 rng(8);
    for (int it = 0; it < 5; ++it) {
        PiSeries f = random_series(c, rng, 9);
        CHECK(psi(frobenius(f, 27), 9) == f);
    }
    CHECK(psi(PiSeries::constant(c, Padic::one(c), 9)) == PiSeries::constant(c, Padic::one(c), 9));
    for (u64 a : {1, 2, 4, 5, 7, 8}) CHECK(psi(PiSeries::one_plus_pi_pow(c, a, 27), 9).is_zero());
}

TEST_CASE("Gamma action") {
    auto c = make_ctx(3, 12);
    std::mt19937_64 rng(3);
    const std::size_t cap = 10;
    PiSeries f = random_series(c, rng, cap);
    CHECK(gamma_act(Padic::one(c), f) == f);
    Padic a = Padic::from_int(c, 4), b = Padic::from_int(c, 7);
    PiSeries lhs = gamma_act(a, gamma_act(b, f)), rhs = gamma_act(a * b, f);
    PVec d = poly::sub(lhs.coeffs(), rhs.coeffs());
    for (const auto& x : d) CHECK(x.is_zero());
    CHECK(gamma_act(a, PiSeries::pi(c, cap)) == power_minus_one(c, 4, cap));
}

TEST_CASE("Mellin transform") {
    auto c = make_ctx(5, 10);
    auto id = FiniteGroupRingElt::group_element(c, 1, 1);
    CHECK(mellin(id) == PiSeries(c, PVec{Padic::one(c), Padic::one(c)}, 25));
    CHECK(mellin(FiniteGroupRingElt::group_element(c, 1, 6)) == PiSeries::one_plus_pi_pow(c, 6, 25));
    CHECK(mellin_inverse(PiSeries(c, PVec{Padic::one(c), Padic::one(c)}, 25), 1) == id);
    // (1+pi)^u - (1+pi) is the image of sigma_u - 1
    auto X = FiniteGroupRingElt::group_element(c, 1, 6) - id;
    CHECK(mellin_inverse(PiSeries::one_plus_pi_pow(c, 6, 25) - PiSeries(c, PVec{Padic::one(c), Padic::one(c)}, 25), 1) == X);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 20; ++it) {
        FiniteGroupRingElt l(c, 2);
        for (u64 a : l.support_indices()) l[static_cast<i64>(a)] = Padic::from_int(c, static_cast<i64>(rng() % 1000) - 500);
        auto h = mellin(l);
        CHECK(psi(h, 25).is_zero());
        CHECK(mellin_inverse(h, 2) == l);
    }
    CHECK_THROWS_AS(mellin_inverse(PiSeries::constant(c, Padic::one(c), 125), 2), Error);
}

TEST_CASE("group ring products and isotypic projections") {
    auto c = make_ctx(3, 10);
    auto g = FiniteGroupRingElt::group_element(c, 1, 2), h = FiniteGroupRingElt::group_element(c, 1, 4);
    CHECK(mellin_inverse(mellin(g * h), 1) == FiniteGroupRingElt::group_element(c, 1, 8));
    auto e = e_theta(g, 0) + e_theta(g, 1);
    CHECK(e == g);
}
