#include <catch_amalgamated.hpp>

#include "iwlog/logmat.hpp"

using namespace iwlog;

namespace {

bool pmat_eq(const PMat& A, const PMat& B) {
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (!(A[i][j] - B[i][j]).is_zero()) return false;
    return true;
}

PMat pmul(const PMat& A, const PMat& B) {
    const Ctx& c = A[0][0].ctx();
    PMat C(A.size(), PVec(B[0].size(), Padic::zero(c)));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B[0].size(); ++j)
            for (std::size_t k = 0; k < B.size(); ++k) C[i][j] += A[i][k] * B[k][j];
    return C;
}

} // namespace

TEST_CASE("crystalline parameters for a_p = 0") {
    for (int k : {0, 1, 2}) {
        auto P = make_ap0_params(3, 20, k, 1);
        Padic a2 = P.alpha * P.alpha;
        CHECK(a2 == Padic::from_int(P.ext, -1) * Padic::from_int(P.ext, 3).pow(k + 1));
        CHECK(P.beta == -P.alpha);
    }
    CHECK(make_ap0_params(3, 20, 0, 1).ext->ext == ExtKind::Ramified);
    CHECK(make_ap0_params(3, 20, 1, 1).ext->ext == ExtKind::Unramified);
    auto Pb = make_ap0_params(3, 20, 1, -1);
    CHECK(Pb.ext == Pb.base);
    CHECK_THROWS_AS(make_ap0_params(3, 20, 0, 3), Error);
}

TEST_CASE("change of basis matrices") {
    auto P = make_ap0_params(5, 16, 1, 2);
    const Ctx& c = P.ext;
    PMat Q = q_matrix_entries(P, QForm::G);
    PMat A = frobenius_matrix(P);
    PMat D = pmul(pmul(inverse2(Q), A), Q);
    CHECK(pmat_eq(D, {{P.alpha.recip(), Padic::zero(c)}, {Padic::zero(c), P.beta.recip()}}));
    Padic half = Padic::from_rational(c, 1, 2);
    CHECK(pmat_eq(Q, {{half, half}, {P.alpha * half, -P.alpha * half}}));
    Padic det = Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0];
    CHECK(det == P.alpha * P.beta * (P.alpha - P.beta).recip());
}

TEST_CASE("Wach matrices") {
    auto P = make_ap0_params(3, 20, 0, 1);
    auto W = wach_matrices_ap0(P, 12);
    auto prod = W.P[0][1] * W.Pinv[1][0];
    CHECK(prod == PiSeries::constant(P.base, Padic::one(P.base), 12));
    CHECK(W.Pinv[0][1] == PiSeries::constant(P.base, Padic::one(P.base), 12));
    // A' is P' modulo pi with q replaced by p
    CHECK(W.Aprime[0][1] == -(P.eps * Padic::from_int(P.base, 3)).recip());
    CHECK(W.Pinv[1][0].coeffs()[0] == -P.eps * Padic::from_int(P.base, 3));
    Padic det = W.Aprime[0][0] * W.Aprime[1][1] - W.Aprime[0][1] * W.Aprime[1][0];
    CHECK(det == (P.eps * Padic::from_int(P.base, 3)).recip());
}

TEST_CASE("logarithmic matrix structure") {
    for (int k : {0, 1}) {
        auto P = make_ap0_params(3, 20, k, 1);
        const Ctx& c = P.base;
        Padic ipk = Padic::from_int(c, 3).pow(-(k + 1));
        for (int n = 1; n <= 3; ++n) {
            LogMatrix M = log_matrix_ap0(P, n);
            CHECK(M.at(0, 0).is_zero());
            CHECK(M.at(1, 1).is_zero());
            auto w21 = equal_up_to_unit_mod(M.at(1, 0), halflog(c, Sign::Minus, k + 1, n), n, k + 1);
            auto w12 = equal_up_to_unit_mod(M.at(0, 1), halflog(c, Sign::Plus, k + 1, n) * ipk, n, k + 1);
            REQUIRE(w21);
            REQUIRE(w12);
            CHECK(w21->integral);
            CHECK(w12->integral);
            CHECK(M.certified_prec >= 8);
        }
    }
}

TEST_CASE("level coherence is exact for k = 0") {
    auto P = make_ap0_params(3, 20, 0, 1);
    LogMatrix M2 = log_matrix_ap0(P, 2), M3 = reduce_level(log_matrix_ap0(P, 3), 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK((M2.at(i, j) - M3.at(i, j)).is_zero());
}

TEST_CASE("semi-ordinary block shape") {
    auto P = make_ap0_params(3, 16, 0, 1);
    const Ctx& c = P.base;
    LogMatrix Mg = log_matrix_ap0(P, 2);
    IwaSeries one = IwaSeries::constant(c, Padic::one(c));
    IwaSeries z = IwaSeries::constant(c, Padic::zero(c));
    LogMatrix B = semi_ordinary_block(Mg, 1, one, {{z, z}, {z, z}}, 2);
    IwaSeries lf = divide_exact(log_tw(c, 2, 2), delta(c, 2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(B.at(i, 2 + j).is_zero());
            CHECK((B.at(i, j) - Mg.at(i, j)).is_zero());
            CHECK((B.at(2 + i, 2 + j) - lf * twist(Mg.at(i, j), 2)).is_zero());
        }
}

TEST_CASE("combined change of basis") {
    auto Pg = make_ap0_params(5, 16, 1, 2);
    const Ctx& c = Pg.ext;
    Padic af = Padic::from_int(c, 7), bf = Padic::from_int(c, 5) * Padic::from_int(c, 3);
    PMat Qg = q_matrix_entries(Pg, QForm::G);
    PMat Q = q_fg_block(Qg, af, bf);
    PMat Qi = inverse_dense(Q);
    PMat I = pmul(Q, Qi);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(I[i][j] == Padic::from_int(c, i == j ? 1 : 0));
    PMat Qgi = inverse2(Qg);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(Qi[i][j] == Qgi[i][j]);
            CHECK(Qi[i][2 + j].is_zero());
        }
    LogMatrix Mg = embed(log_matrix_ap0(Pg, 1), c);
    IwaSeries one = IwaSeries::constant(c, Padic::one(c)), z = IwaSeries::constant(c, Padic::zero(c));
    LogMatrix B = semi_ordinary_block(Mg, 0, one, {{z, z}, {z, z}}, 1);
    LogMatrix R = combined(Qi, B);
    LogMatrix small = qinv_times(Pg, log_matrix_ap0(Pg, 1));
    auto L = level_ring(c, 1, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(poly::is_zero(poly::sub(L->reduce(R.at(i, j).coeffs()), L->reduce(small.at(i, j).coeffs()))));
}
