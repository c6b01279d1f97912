#include <catch_amalgamated.hpp>

#include <complex>

#include "iwlog/qexp.hpp"

using namespace iwlog;

namespace {

QExpansion gaussian_theta(int nmax) {
    ImagQuadCtx K;
    K.D = -4;
    K.t = 4;
    check_units(K);
    return theta_series(K, nmax);
}

} // namespace

TEST_CASE("theta series for Q(i)") {
    QExpansion th = gaussian_theta(300);
    CHECK(th.ring == "Z");
    CHECK(th.int_coeff(1) == 1);
    CHECK(th.int_coeff(2) == -4);
    CHECK(th.int_coeff(3) == 0);
    CHECK(th.int_coeff(5) == -14);
    CHECK(th.int_coeff(7) == 0);
    for (int n = 1; n <= 100; ++n) {
        long double s = 0;
        for (int x = -11; x <= 11; ++x)
            for (int y = -11; y <= 11; ++y)
                if (x * x + y * y == n) s += std::pow(std::complex<long double>(x, y), 4).real();
        CHECK(std::llround(s / 4) == th.int_coeff(n));
    }
    // a_{l^2} = a_l^2 - eps(l) l^t at split primes
    for (int l : {5, 13, 17}) CHECK(th.int_coeff(l * l) == th.int_coeff(l) * th.int_coeff(l) - static_cast<i64>(std::pow(l, 4)));
}

TEST_CASE("unit consistency") {
    ImagQuadCtx K;
    K.D = -3;
    K.t = 4;
    check_units(K);
    CHECK_FALSE(K.unit_consistent);
    CHECK_THROWS_AS(theta_series(K, 10), Error);
    K.t = 6;
    check_units(K);
    CHECK(K.unit_consistent);
}

TEST_CASE("depletion") {
    QExpansion ones;
    ones.M = 1;
    for (int n = 0; n < 30; ++n) ones.coeffs.push_back(KCyc{{1}, {0}});
    QExpansion d = deplete(ones, 3);
    for (int n = 1; n <= 30; ++n) CHECK(d.int_coeff(n) == (n % 3 == 0 ? 0 : 1));
    QExpansion dd = deplete(d, 3);
    for (int n = 1; n <= 30; ++n) CHECK(dd.int_coeff(n) == d.int_coeff(n));
    QExpansion th = gaussian_theta(48);
    QExpansion th7 = deplete(th, 7);
    for (int n = 1; n <= 48; ++n) CHECK(th7.int_coeff(n) == th.int_coeff(n));
}

TEST_CASE("depleted Eisenstein series") {
    CycRing R(8);
    QExpansion E = eisenstein_depleted(3, 8, 1, 3, 20);
    auto a1 = R.add(R.zeta(1), R.scale(R.zeta(-1), -1));
    CHECK(E.coeffs[0].re == a1);
    for (int l : {2, 5, 7, 11}) {
        auto expect = R.add(R.add(R.zeta(1), R.scale(R.zeta(-1), -1)), R.scale(R.add(R.zeta(l), R.scale(R.zeta(-l), -1)), l * l));
        CHECK(E.coeffs[static_cast<std::size_t>(l - 1)].re == expect);
    }
    CHECK(E.coeffs[2].re == R.zero());
    QExpansion odd = eisenstein_depleted(3, 2, 1, 5, 20);
    for (int n = 1; n <= 20; ++n) CHECK(odd.int_coeff(n) == 0);
}

TEST_CASE("Dirichlet series from Euler factors") {
    std::map<u64, std::vector<i64>> zeta;
    for (u64 l : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) zeta[l] = {1, -1};
    auto t = dirichlet_from_euler(zeta, 30);
    for (i64 x : t) CHECK(x == 1);
    auto s = dirichlet_from_euler({{2, {1, -2, 1}}}, 64);
    for (int m = 0; m <= 6; ++m) CHECK(s[static_cast<std::size_t>((1 << m) - 1)] == m + 1);
    QExpansion th = gaussian_theta(50);
    std::map<u64, std::vector<i64>> loc;
    for (u64 l = 2; l <= 50; ++l)
        if (zn::is_prime(l)) loc[l] = {1, -th.int_coeff(static_cast<int>(l)), kronecker(-4, l) * static_cast<i64>(std::pow(l, 4))};
    auto e = dirichlet_from_euler(loc, 50);
    for (int n = 1; n <= 50; ++n) CHECK(e[static_cast<std::size_t>(n - 1)] == th.int_coeff(n));
}

TEST_CASE("nebentype") {
    ImagQuadCtx K;
    K.D = -4;
    K.t = 4;
    check_units(K);
    CycRing R(1);
    CHECK(nebentype_value(K, 5) == R.scale(R.one(), 1));
    CHECK(nebentype_value(K, 7) == R.scale(R.one(), -1));
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-3, 7) == 1);
    CHECK(kronecker(-7, 2) == 1);
    CHECK_THROWS_AS(nebentype_value(K, 2), Error);
}
