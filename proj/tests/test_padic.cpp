#include <catch_amalgamated.hpp>

#include "iwlog/linalg.hpp"
#include "iwlog/padic.hpp"

using namespace iwlog;

TEST_CASE("valuations") {
    auto c = make_ctx(3, 20);
    CHECK(Padic::from_int(c, 12).val() == QVal{1, 1, false});
    CHECK(Padic::from_int(c, 0).is_zero());
    CHECK(Padic::from_int(c, 0).val().inf);
    auto r = make_ctx(3, 10, ExtKind::Ramified, 2);
    CHECK(Padic::uniformizer(r).val() == QVal{1, 2, false});
}

TEST_CASE("inverse") {
    auto c = make_ctx(5, 3);
    CHECK(Padic::one(c).inv() == Padic::one(c));
    CHECK(Padic::from_int(c, 2).inv().coords().first == 63);
    CHECK_THROWS_AS(Padic::from_int(c, 5).inv(), Error);
    for (i64 a = 1; a < 125; ++a) {
        if (a % 5 == 0) continue;
        u64 x = 1;
        while ((static_cast<u64>(a) * x) % 125 != 1) ++x;
        CHECK(Padic::from_int(c, a).inv().coords().first == x);
    }
}

TEST_CASE("teichmuller") {
    auto c = make_ctx(5, 3);
    CHECK(teichmuller(c, 1).coords().first == 1);
    CHECK(teichmuller(c, 2).coords().first == 57);
    CHECK(teichmuller(c, 4).coords().first == 124);
    auto t = teichmuller(c, 2);
    CHECK(t.pow(4) == Padic::one(c));
    CHECK(t * t == Padic::from_int(c, -1));
}

TEST_CASE("square roots") {
    auto c = make_ctx(5, 3);
    CHECK(sqrt(Padic::from_int(c, -1)).coords().first == 57);
    CHECK(sqrt(Padic::one(c)) == Padic::one(c));
    CHECK_THROWS_AS(sqrt(Padic::from_int(c, 5)), Error);
    auto r = make_ctx(3, 10, ExtKind::Ramified, 2);
    auto a = sqrt(Padic::from_int(r, -3));
    CHECK(a * a == Padic::from_int(r, -3));
    auto u = make_ctx(3, 10, ExtKind::Unramified);
    auto b = sqrt(Padic::from_int(u, -9));
    CHECK(b * b == Padic::from_int(u, -9));
}

TEST_CASE("precision tracking") {
    auto c = make_ctx(5, 10);
    auto x = Padic::from_int(c, 12), y = Padic::from_int(c, -12);
    CHECK((x + y).is_zero());
    auto q = Padic::from_int(c, 30) / Padic::from_int(c, 5);
    CHECK(q == Padic::from_int(c, 6));
    CHECK(q.abs_prec() <= 10);
    auto z = Padic::from_int(c, 25).recip();
    CHECK(z.val() == QVal{-2, 1, false});
    CHECK((z * Padic::from_int(c, 25)) == Padic::one(c));
}

TEST_CASE("integral linear solve") {
    auto c = make_ctx(3, 12);
    PMat A{{Padic::from_int(c, 3), Padic::from_int(c, 1)}, {Padic::from_int(c, 0), Padic::from_int(c, 3)}};
    PVec b{Padic::from_int(c, 4), Padic::from_int(c, 3)};
    auto x = solve_integral(A, b);
    REQUIRE(x);
    CHECK((*x)[0] == Padic::one(c));
    CHECK((*x)[1] == Padic::one(c));
    PVec bad{Padic::from_int(c, 1), Padic::from_int(c, 1)};
    CHECK_FALSE(solve_integral(A, bad));
}
