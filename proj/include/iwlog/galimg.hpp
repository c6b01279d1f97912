#ifndef IWLOG_GALIMG_HPP
#define IWLOG_GALIMG_HPP

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "padic.hpp"

namespace iwlog {

// F_p, or F_{p^2} = F_p(w) with w^2 = d; elements encoded as a + p*b
struct Fq {
    u64 p = 2;
    u64 d = 0;
    bool ext = false;

    static Fq prime(u64 p) {
        if (!zn::is_prime(p)) throw Error(Err::BadPrime, "not a prime: " + std::to_string(p));
        return Fq{p, 0, false};
    }
    static Fq quadratic(u64 p) {
        Fq f = prime(p);
        f.ext = true;
        for (u64 x = 2; x < p; ++x)
            if (zn::powmod(x, (p - 1) / 2, p) == p - 1) {
                f.d = x;
                break;
            }
        if (p == 2) throw Error(Err::BadPrime, "quadratic extension needs an odd prime");
        return f;
    }
    u64 order() const { return ext ? p * p : p; }
    u64 make(i64 a, i64 b = 0) const {
        u64 x = zn::reduce_signed(a, p), y = ext ? zn::reduce_signed(b, p) : 0;
        return x + p * y;
    }
    u64 add(u64 x, u64 y) const { return (x % p + y % p) % p + p * (((x / p) + (y / p)) % p); }
    u64 neg(u64 x) const { return (p - x % p) % p + p * ((p - (x / p) % p) % p); }
    u64 sub(u64 x, u64 y) const { return add(x, neg(y)); }
    u64 mul(u64 x, u64 y) const {
        u64 a = x % p, b = x / p, c = y % p, e = y / p;
        u64 re = (a * c + (b * e % p) * d) % p;
        u64 im = (a * e + b * c) % p;
        return re + p * im;
    }
    u64 pow(u64 x, u64 k) const {
        u64 r = 1;
        while (k) {
            if (k & 1) r = mul(r, x);
            x = mul(x, x);
            k >>= 1;
        }
        return r;
    }
    u64 inv(u64 x) const {
        if (x == 0) throw Error(Err::NonUnit, "zero has no inverse");
        return pow(x, order() - 2);
    }
};

struct FMat {
    int n = 0;
    std::vector<u64> a;  // row-major
    u64& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    u64 at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
    bool operator==(const FMat& o) const { return n == o.n && a == o.a; }
    bool operator<(const FMat& o) const { return a < o.a; }
};

struct FMatHash {
    std::size_t operator()(const FMat& m) const {
        std::size_t h = 1469598103934665603ull;
        for (u64 x : m.a) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

inline FMat fmat_identity(int n) {
    FMat I{n, std::vector<u64>(static_cast<std::size_t>(n * n), 0)};
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

inline FMat fmat_from(const Fq& F, int n, const std::vector<i64>& rowmajor) {
    if (rowmajor.size() != static_cast<std::size_t>(n * n)) throw Error(Err::BadInput, "matrix size mismatch");
    FMat M{n, {}};
    for (i64 x : rowmajor) M.a.push_back(F.make(x));
    return M;
}

inline FMat fmat_mul(const Fq& F, const FMat& A, const FMat& B) {
    FMat C{A.n, std::vector<u64>(A.a.size(), 0)};
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            u64 x = A.at(i, k);
            if (!x) continue;
            for (int j = 0; j < A.n; ++j) C.at(i, j) = F.add(C.at(i, j), F.mul(x, B.at(k, j)));
        }
    return C;
}

inline FMat fmat_sub(const Fq& F, const FMat& A, const FMat& B) {
    FMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

inline FMat fmat_add(const Fq& F, const FMat& A, const FMat& B) {
    FMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

inline bool fmat_is_zero(const FMat& A) {
    for (u64 x : A.a)
        if (x) return false;
    return true;
}

inline int fmat_rank(const Fq& F, FMat A) {
    int n = A.n, r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (A.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(A.at(r, j), A.at(piv, j));
        u64 iv = F.inv(A.at(r, c));
        for (int j = 0; j < n; ++j) A.at(r, j) = F.mul(A.at(r, j), iv);
        for (int i = 0; i < n; ++i) {
            if (i == r || !A.at(i, c)) continue;
            u64 f = A.at(i, c);
            for (int j = 0; j < n; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
        }
        ++r;
    }
    return r;
}

inline u64 fmat_det(const Fq& F, FMat A) {
    int n = A.n;
    u64 det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(A.at(c, j), A.at(piv, j));
            det = F.neg(det);
        }
        det = F.mul(det, A.at(c, c));
        u64 iv = F.inv(A.at(c, c));
        for (int i = c + 1; i < n; ++i) {
            u64 f = F.mul(A.at(i, c), iv);
            if (!f) continue;
            for (int j = c; j < n; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(c, j)));
        }
    }
    return det;
}

// basis order e1(x)f1, e1(x)f2, e2(x)f1, e2(x)f2
inline FMat kron(const Fq& F, const FMat& A, const FMat& B) {
    int n = A.n * B.n;
    FMat K{n, std::vector<u64>(static_cast<std::size_t>(n * n), 0)};
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            for (int k = 0; k < B.n; ++k)
                for (int l = 0; l < B.n; ++l) K.at(i * B.n + k, j * B.n + l) = F.mul(A.at(i, j), B.at(k, l));
    return K;
}

inline FMat block_diag(const FMat& A, const FMat& B) {
    int n = A.n + B.n;
    FMat D{n, std::vector<u64>(static_cast<std::size_t>(n * n), 0)};
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) D.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) D.at(A.n + i, A.n + j) = B.at(i, j);
    return D;
}

struct MatGroupGen {
    Fq field;
    int dim = 2;
    std::vector<FMat> gens;
};

struct Group {
    Fq field;
    int dim = 0;
    std::vector<FMat> elements;
    std::size_t order() const { return elements.size(); }
};

inline Group closure(const MatGroupGen& g, std::size_t budget = 10000000) {
    for (const auto& x : g.gens) {
        if (x.n != g.dim) throw Error(Err::BadInput, "generator dimension mismatch");
        if (fmat_det(g.field, x) == 0) throw Error(Err::BadInput, "generator not invertible");
    }
    Group G{g.field, g.dim, {}};
    std::unordered_set<FMat, FMatHash> seen;
    std::deque<FMat> queue;
    FMat I = fmat_identity(g.dim);
    seen.insert(I);
    queue.push_back(I);
    while (!queue.empty()) {
        FMat x = queue.front();
        queue.pop_front();
        G.elements.push_back(x);
        for (const auto& s : g.gens) {
            FMat y = fmat_mul(g.field, x, s);
            if (seen.insert(y).second) {
                if (seen.size() > budget) throw Error(Err::BudgetExceeded, "group exceeds enumeration budget");
                queue.push_back(y);
            }
        }
    }
    return G;
}

inline FMat fmat_inverse(const Fq& F, const FMat& A) {
    int n = A.n;
    FMat M = A, R = fmat_identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (M.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) throw Error(Err::NonUnit, "singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(M.at(c, j), M.at(piv, j));
            std::swap(R.at(c, j), R.at(piv, j));
        }
        u64 iv = F.inv(M.at(c, c));
        for (int j = 0; j < n; ++j) {
            M.at(c, j) = F.mul(M.at(c, j), iv);
            R.at(c, j) = F.mul(R.at(c, j), iv);
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || !M.at(i, c)) continue;
            u64 f = M.at(i, c);
            for (int j = 0; j < n; ++j) {
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(c, j)));
                R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(c, j)));
            }
        }
    }
    return R;
}

// subgroup generated by all commutators
inline Group derived_subgroup(const Group& G) {
    std::unordered_set<FMat, FMatHash> comms;
    std::vector<FMat> inv;
    for (const auto& x : G.elements) inv.push_back(fmat_inverse(G.field, x));
    for (std::size_t i = 0; i < G.elements.size(); ++i)
        for (std::size_t j = 0; j < G.elements.size(); ++j) {
            FMat c = fmat_mul(G.field, fmat_mul(G.field, inv[i], inv[j]), fmat_mul(G.field, G.elements[i], G.elements[j]));
            comms.insert(c);
        }
    MatGroupGen gg{G.field, G.dim, std::vector<FMat>(comms.begin(), comms.end())};
    std::sort(gg.gens.begin(), gg.gens.end());
    return closure(gg);
}

inline std::vector<std::size_t> derived_series_orders(const Group& G) {
    std::vector<std::size_t> out{G.order()};
    Group cur = G;
    while (cur.order() > 1) {
        Group nxt = derived_subgroup(cur);
        if (nxt.order() == cur.order()) break;
        out.push_back(nxt.order());
        cur = std::move(nxt);
    }
    return out;
}

inline bool is_solvable(const Group& G) { return derived_series_orders(G).back() == 1; }

inline bool is_abelian(const Group& G) {
    for (const auto& x : G.elements)
        for (const auto& y : G.elements)
            if (!(fmat_mul(G.field, x, y) == fmat_mul(G.field, y, x))) return false;
    return true;
}

struct GoursatVerdict {
    std::size_t order_h = 0, order_1 = 0, order_2 = 0;
    bool full_product = false;
    bool pr2_solvable = false;
    bool pr1_is_sl2 = false;
};

// H generated by pairs (g_1, g_2) inside G_1 x G_2
inline GoursatVerdict goursat_product_check(const Fq& F, const std::vector<std::pair<FMat, FMat>>& pairs, std::size_t budget = 10000000) {
    if (pairs.empty()) throw Error(Err::BadInput, "no generators");
    int n1 = pairs[0].first.n, n2 = pairs[0].second.n;
    MatGroupGen h{F, n1 + n2, {}}, g1{F, n1, {}}, g2{F, n2, {}};
    for (const auto& [a, b] : pairs) {
        h.gens.push_back(block_diag(a, b));
        g1.gens.push_back(a);
        g2.gens.push_back(b);
    }
    Group H = closure(h, budget), G1 = closure(g1, budget), G2 = closure(g2, budget);
    GoursatVerdict v;
    v.order_h = H.order();
    v.order_1 = G1.order();
    v.order_2 = G2.order();
    v.full_product = v.order_h == v.order_1 * v.order_2;
    v.pr2_solvable = is_solvable(G2);
    if (n1 == 2) {
        u64 q = F.order();
        bool dets = true;
        for (const auto& x : G1.elements) dets = dets && fmat_det(F, x) == 1;
        v.pr1_is_sl2 = dets && G1.order() == q * (q * q - 1);
    }
    return v;
}

struct DihedralData {
    Fq field;
    std::vector<std::pair<u64, u64>> k_classes;    // (psi(sigma), psi(c sigma c^{-1}))
    std::vector<std::pair<u64, u64>> off_classes;  // (x, x')
    // psi(k_classes[lhs[0]]) * psi(k_classes[lhs[1]]) * ... = psi(k_classes[rhs])
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> relations;
};

inline MatGroupGen dihedral_rep(const DihedralData& d) {
    const Fq& F = d.field;
    MatGroupGen g{F, 2, {}};
    for (const auto& [a, b] : d.k_classes)
        if (a == 0 || b == 0) throw Error(Err::InconsistentCharacter, "character value zero");
    for (const auto& [x, y] : d.off_classes)
        if (x == 0 || y == 0) throw Error(Err::InconsistentCharacter, "off-K value zero");
    for (const auto& [lhs, rhs] : d.relations) {
        if (rhs >= d.k_classes.size()) throw Error(Err::BadInput, "relation index out of range");
        u64 a = 1, b = 1;
        for (std::size_t i : lhs) {
            if (i >= d.k_classes.size()) throw Error(Err::BadInput, "relation index out of range");
            a = F.mul(a, d.k_classes[i].first);
            b = F.mul(b, d.k_classes[i].second);
        }
        if (a != d.k_classes[rhs].first || b != d.k_classes[rhs].second) throw Error(Err::InconsistentCharacter, "relation violated");
    }
    for (const auto& [a, b] : d.k_classes) {
        FMat M{2, {F.inv(a), 0, 0, F.inv(b)}};
        g.gens.push_back(M);
    }
    for (const auto& [x, y] : d.off_classes) {
        FMat M{2, {0, x, y, 0}};
        g.gens.push_back(M);
    }
    return g;
}

// an abelian subgroup of index <= 2: the diagonal part
inline bool has_abelian_index2(const Group& G) {
    Group D{G.field, G.dim, {}};
    for (const auto& x : G.elements)
        if (G.dim == 2 && x.at(0, 1) == 0 && x.at(1, 0) == 0) D.elements.push_back(x);
    return 2 * D.order() >= G.order() && is_abelian(D);
}

struct TauCertificate {
    FMat tau;
    std::string min_poly = "(X-1)^2(X+1)^2";
    int rank_minus_one = 0;                // rank of tau - 1
    int quotient_dim = 0;                  // dim of F^4 / (tau - 1)F^4
    std::vector<int> ranks_minus_one;      // rank (tau - 1)^i, i = 1..4
    std::vector<int> jordan_one;           // Jordan block sizes at eigenvalue 1
    std::vector<int> jordan_minus_one;     // Jordan block sizes at eigenvalue -1
};

inline std::vector<int> jordan_sizes(const Fq& F, const FMat& N) {
    int n = N.n;
    std::vector<int> rk{n};
    FMat P = fmat_identity(n);
    for (int i = 1; i <= n; ++i) {
        P = fmat_mul(F, P, N);
        rk.push_back(fmat_rank(F, P));
    }
    // blocks of size >= i: rk[i-1] - rk[i]
    std::vector<int> ge(static_cast<std::size_t>(n + 2), 0);
    for (int i = 1; i <= n; ++i) ge[static_cast<std::size_t>(i)] = rk[static_cast<std::size_t>(i - 1)] - rk[static_cast<std::size_t>(i)];
    std::vector<int> sizes;
    for (int i = n; i >= 1; --i)
        for (int c = 0; c < ge[static_cast<std::size_t>(i)] - ge[static_cast<std::size_t>(i + 1)]; ++c) sizes.push_back(i);
    return sizes;
}

inline bool has_tau_minpoly(const Fq& F, const FMat& t) {
    FMat I = fmat_identity(t.n);
    FMat a = fmat_sub(F, t, I), b = fmat_add(F, t, I);
    FMat a2 = fmat_mul(F, a, a), b2 = fmat_mul(F, b, b);
    if (!fmat_is_zero(fmat_mul(F, a2, b2))) return false;
    if (fmat_is_zero(fmat_mul(F, a, b2))) return false;
    if (fmat_is_zero(fmat_mul(F, a2, b))) return false;
    return true;
}

inline TauCertificate tau_certificate(const Fq& F, const FMat& t) {
    TauCertificate c;
    c.tau = t;
    FMat I = fmat_identity(t.n);
    FMat a = fmat_sub(F, t, I);
    FMat P = I;
    for (int i = 1; i <= t.n; ++i) {
        P = fmat_mul(F, P, a);
        c.ranks_minus_one.push_back(fmat_rank(F, P));
    }
    c.rank_minus_one = c.ranks_minus_one[0];
    c.quotient_dim = t.n - c.rank_minus_one;
    c.jordan_one = jordan_sizes(F, a);
    c.jordan_minus_one = jordan_sizes(F, fmat_add(F, t, I));
    return c;
}

inline std::optional<TauCertificate> find_tau(const MatGroupGen& g4, std::size_t budget = 10000000) {
    Group G = closure(g4, budget);
    for (const auto& x : G.elements)
        if (has_tau_minpoly(g4.field, x)) return tau_certificate(g4.field, x);
    return std::nullopt;
}

// standard generators of SL_2(F_p)
inline MatGroupGen sl2_gens(const Fq& F) {
    MatGroupGen g{F, 2, {}};
    g.gens.push_back(FMat{2, {1, 1, 0, 1}});
    g.gens.push_back(FMat{2, {1, 0, 1, 1}});
    return g;
}

} // namespace iwlog

#endif
