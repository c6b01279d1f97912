#include <catch_amalgamated.hpp>

#include <random>

#include "iwlog/split.hpp"

using namespace iwlog;

namespace {

IwaSeries random_poly(const Ctx& c, std::mt19937_64& rng, int deg) {
    PVec v;
    for (int i = 0; i < deg; ++i) v.push_back(Padic::from_int(c, static_cast<i64>(rng() % 201) - 100));
    return IwaSeries::poly(c, v);
}

i64 floor_val(const PVec& v) {
    i64 m = Padic::kInf;
    for (const auto& x : v) m = std::min(m, x.is_zero() ? x.abs_prec() : x.val_units());
    return m;
}

struct Setup {
    CrystalParams P = make_ap0_params(3, 20, 0, 1);
    LogMatrix A = qinv_times(P, log_matrix_ap0(P, 3));
};

const Setup& setup() {
    static Setup s;
    return s;
}

} // namespace

TEST_CASE("forward map") {
    const auto& S = setup();
    const Ctx& c = S.P.ext;
    IwaSeries z = IwaSeries::poly(c, PVec{}), one = IwaSeries::constant(c, Padic::one(c));
    auto ab = forward(SignedPair{z, z, 3, 0}, S.A);
    CHECK(ab.alpha.is_zero());
    CHECK(ab.beta.is_zero());
    auto col = forward(SignedPair{one, z, 3, 0}, S.A);
    CHECK((col.alpha - S.A.at(0, 0)).is_zero());
    CHECK((col.beta - S.A.at(1, 0)).is_zero());
}

TEST_CASE("signed splitting round trip") {
    const auto& S = setup();
    const Ctx& c = S.P.ext;
    std::mt19937_64 rng(21);
    for (int it = 0; it < 20; ++it) {
        SignedPair s{random_poly(c, rng, 7), random_poly(c, rng, 21), 3, 0};
        auto back = signed_split(forward(s, S.A), S.A, 3);
        CHECK(floor_val(poly::sub(back.plus.coeffs(), s.plus.coeffs())) >= 8 * c->e);
        CHECK(floor_val(poly::sub(back.minus.coeffs(), s.minus.coeffs())) >= 8 * c->e);
    }
    auto zero = signed_split(AlphaBetaPair{IwaSeries::poly(c, PVec{}), IwaSeries::poly(c, PVec{}), 3}, S.A, 3);
    CHECK(zero.plus.is_zero());
    CHECK(zero.minus.is_zero());
}

TEST_CASE("unbounded inputs are rejected") {
    const auto& S = setup();
    const Ctx& c = S.P.ext;
    AlphaBetaPair ab{IwaSeries::constant(c, Padic::one(c)), IwaSeries::poly(c, PVec{}), 3};
    try {
        signed_split(ab, S.A, 3);
        FAIL("expected NoBoundedSolution");
    } catch (const Error& e) {
        CHECK(e.kind == Err::NoBoundedSolution);
    }
}

TEST_CASE("signed moduli") {
    auto c = make_ctx(3, 20);
    CHECK(signed_modulus(c, Sign::Plus, 3, 1).degree() == 7);
    CHECK(signed_modulus(c, Sign::Minus, 3, 1).degree() == 21);
    IwaSeries prod = signed_modulus(c, Sign::Plus, 3, 1) * signed_modulus(c, Sign::Minus, 3, 1);
    CHECK((prod - omega(c, 3) * IwaSeries::X(c)).is_zero());
}

TEST_CASE("Weierstrass division") {
    auto c = make_ctx(5, 12);
    IwaSeries f = IwaSeries::poly(c, poly::from_ints(c, {5, 10, 1, 3}));
    IwaSeries g = IwaSeries::poly(c, poly::from_ints(c, {1, 2, 3, 4, 5, 6}));
    auto w = weierstrass_divide(g, f.truncated(40));
    CHECK(w.lambda == 2);
    CHECK(w.r.degree() < 2);
    IwaSeries back = w.q * f + w.r;
    PVec d = poly::sub(back.truncated(30).coeffs(), g.truncated(30).coeffs());
    for (const auto& x : d) CHECK(x.is_zero());
}

TEST_CASE("antisymmetric factor") {
    auto P = make_ap0_params(3, 10, 0, 1);
    const Ctx& c = P.ext;
    LogMatrix T = qinv_times(P, log_matrix_ap0_series(P, 3, 400));
    WeierstrassDivisor W(det2(T));
    std::mt19937_64 rng(13);
    for (int it = 0; it < 3; ++it) {
        IwaSeries G = random_poly(c, rng, 6);
        IwaSeries q = antisym_factor(det2(T) * G, W);
        CHECK(poly::is_zero(poly::sub(q.coeffs(), G.truncated(q.deg_cap()).coeffs())));
    }
    CHECK(antisym_factor(IwaSeries::poly(c, PVec{}), T).is_zero());
    CHECK_THROWS_AS(antisym_factor(IwaSeries(c, PVec{Padic::one(c)}, 400), W), Error);
}

TEST_CASE("log divisibility") {
    auto c = make_ctx(3, 16);
    std::mt19937_64 rng(2);
    for (int k : {0, 1}) {
        IwaSeries r = random_poly(c, rng, 4);
        CHECK(logdiv_check(log_tw(c, k + 1, 3) * r, k, 3));
        CHECK_FALSE(logdiv_check(IwaSeries::constant(c, Padic::one(c)), k, 3));
        r.coeffs()[0] = Padic::one(c);
        CHECK_FALSE(logdiv_check(halflog(c, Sign::Plus, k + 1, 3) * r, k, 3));
    }
}
