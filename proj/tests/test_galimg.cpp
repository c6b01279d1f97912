#include <catch_amalgamated.hpp>

#include "iwlog/galimg.hpp"

using namespace iwlog;

TEST_CASE("closure orders") {
    auto F5 = Fq::prime(5), F7 = Fq::prime(7);
    CHECK(closure(sl2_gens(F5)).order() == 120);
    CHECK(closure(sl2_gens(F7)).order() == 336);
    CHECK(closure(MatGroupGen{F5, 2, {fmat_identity(2)}}).order() == 1);
    auto F9 = Fq::quadratic(3);
    CHECK(closure(sl2_gens(F9)).order() == 24);
    CHECK(F9.mul(F9.make(0, 1), F9.make(0, 1)) == F9.make(static_cast<i64>(F9.d)));
}

TEST_CASE("derived series") {
    auto F5 = Fq::prime(5);
    Group S = closure(sl2_gens(F5));
    CHECK_FALSE(is_solvable(S));
    Group D = closure(MatGroupGen{F5, 2, {FMat{2, {2, 0, 0, 3}}, FMat{2, {0, 1, 1, 0}}}});
    CHECK(D.order() == 8);
    CHECK(is_solvable(D));
    CHECK_FALSE(is_abelian(D));
}

TEST_CASE("Goursat verdicts") {
    auto F5 = Fq::prime(5);
    auto g = sl2_gens(F5);
    auto v = goursat_product_check(F5, {{g.gens[0], fmat_identity(2)}, {g.gens[1], FMat{2, {2, 0, 0, 3}}}});
    CHECK(v.order_h == 480);
    CHECK(v.full_product);
    CHECK(v.pr1_is_sl2);
    auto diag = goursat_product_check(F5, {{g.gens[0], g.gens[0]}, {g.gens[1], g.gens[1]}});
    CHECK_FALSE(diag.full_product);
    auto d8 = goursat_product_check(F5, {{g.gens[0], FMat{2, {2, 0, 0, 3}}}, {g.gens[1], FMat{2, {0, 1, 1, 0}}}});
    CHECK(d8.order_2 == 8);
    CHECK(d8.pr2_solvable);
    CHECK(d8.full_product);
}

TEST_CASE("induced representation images") {
    auto F7 = Fq::prime(7);
    DihedralData triv{F7, {{1, 1}}, {{1, 1}}, {}};
    Group G = closure(dihedral_rep(triv));
    CHECK(G.order() == 2);
    DihedralData d{F7, {{3, 5}, {2, 4}}, {{2, 3}}, {{{0, 0}, 1}}};
    Group H = closure(dihedral_rep(d));
    CHECK(has_abelian_index2(H));
    for (const auto& x : H.elements)
        if (x.at(0, 0) == 0) CHECK(fmat_det(F7, x) == F7.neg(F7.mul(x.at(0, 1), x.at(1, 0))));
    DihedralData bad{F7, {{3, 5}, {2, 4}}, {{2, 3}}, {{{0, 0}, 0}}};
    CHECK_THROWS_AS(dihedral_rep(bad), Error);
}

TEST_CASE("tau certificates") {
    auto F7 = Fq::prime(7);
    FMat t = kron(F7, FMat{2, {1, 1, 0, 1}}, FMat{2, {0, 1, 1, 0}});
    CHECK(has_tau_minpoly(F7, t));
    auto c = tau_certificate(F7, t);
    CHECK(c.rank_minus_one == 3);
    CHECK(c.jordan_one == std::vector<int>{2});
    CHECK(c.jordan_minus_one == std::vector<int>{2});
    CHECK_FALSE(find_tau(MatGroupGen{F7, 4, {fmat_identity(4)}}));
    auto g = sl2_gens(F7);
    MatGroupGen tens{F7, 4, {kron(F7, g.gens[0], FMat{2, {0, 1, 1, 0}}), kron(F7, g.gens[1], FMat{2, {3, 0, 0, 5}})}};
    CHECK(find_tau(tens));
}
