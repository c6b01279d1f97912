#ifndef IWLOG_LOGMAT_HPP
#define IWLOG_LOGMAT_HPP

#include <array>
#include <unordered_map>

#include "cycser.hpp"

namespace iwlog {

enum class CrystalMode { FLSupplied, ApZero };

// Base ring Z_p (ctx `base`) and the coefficient ring holding alpha (ctx `ext`).
struct CrystalParams {
    Ctx base;
    Ctx ext;
    int k = 0;
    Padic eps;    // in base
    Padic alpha;  // in ext
    Padic beta;   // in ext
    CrystalMode mode = CrystalMode::ApZero;
};

// value of a base element in an extension context
inline Padic embed(const Padic& x, const Ctx& ext) {
    const Ctx& b = x.ctx();
    if (b == ext) return x;
    i64 e = ext->e;
    if (x.is_zero()) return x.is_exact_zero() ? Padic::zero(ext) : Padic::zero_at(ext, x.abs_prec() * e);
    i64 v = x.val_units();
    Padic u = Padic::from_coords(ext, x.unit_a(), 0, static_cast<i64>(x.rel_prec()) * e);
    return u * Padic::from_int(ext, static_cast<i64>(b->p)).pow(v);
}

// inverse of embed; fails when the element has a nonzero extension coordinate
inline Padic descend(const Padic& x, const Ctx& base) {
    const Ctx& c = x.ctx();
    if (c == base) return x;
    i64 e = c->e;
    if (x.is_zero()) return x.is_exact_zero() ? Padic::zero(base) : Padic::zero_at(base, x.abs_prec() / e);
    i64 s = x.val_units() < 0 ? (-x.val_units() + e - 1) / e : 0;
    Padic y = x * Padic::from_int(c, static_cast<i64>(c->p)).pow(s);
    auto [a, bb] = y.coords();
    i64 ab = std::min<i64>(y.abs_prec(), c->cap());
    // the second coordinate must vanish to the known precision
    i64 bprec = e == 2 ? (ab - 1) / 2 : ab;
    u64 md = bprec >= c->N ? c->mod : zn::ipow(c->p, static_cast<unsigned>(std::max<i64>(bprec, 0)));
    if (bb % md != 0) throw Error(Err::BadInput, "element does not descend to the base ring");
    i64 aprec = e == 2 ? (ab + 1) / 2 : ab;
    Padic r = Padic::from_coords(base, a % base->mod, 0, aprec);
    return r * Padic::from_int(base, static_cast<i64>(c->p)).pow(-s);
}

inline IwaSeries embed(const IwaSeries& F, const Ctx& ext) {
    PVec v;
    for (const auto& x : F.coeffs()) v.push_back(embed(x, ext));
    return IwaSeries(ext, v, F.deg_cap(), F.growth());
}
inline IwaSeries descend(const IwaSeries& F, const Ctx& base) {
    PVec v;
    for (const auto& x : F.coeffs()) v.push_back(descend(x, base));
    return IwaSeries(base, v, F.deg_cap(), F.growth());
}

// alpha^2 = -eps p^{k+1}; chooses the smallest extension holding alpha
inline CrystalParams make_ap0_params(u64 p, int N, int k, i64 eps) {
    CrystalParams P;
    P.k = k;
    P.mode = CrystalMode::ApZero;
    P.base = make_ctx(p, N);
    if (zn::reduce_signed(eps, p) == 0) throw Error(Err::NonUnit, "eps(p) must be a unit");
    u64 me = zn::reduce_signed(-eps, p);
    if ((k + 1) % 2 == 1) P.ext = make_ctx(p, N, ExtKind::Ramified, zn::reduce_signed(-eps, make_ctx(p, N)->mod));
    else if (zn::powmod(me, (p - 1) / 2, p) == 1) P.ext = P.base;
    else P.ext = make_ctx(p, N, ExtKind::Unramified);
    P.eps = Padic::from_int(P.base, eps);
    Padic target = Padic::from_int(P.ext, -eps) * Padic::from_int(P.ext, static_cast<i64>(p)).pow(k + 1);
    P.alpha = sqrt(target);
    P.beta = -P.alpha;
    return P;
}

// ---------------------------------------------------------------------------
// matrices with IwaSeries entries

struct LogMatrix {
    int dim = 2;
    int level = 0;
    int k = 0;
    std::string provenance;
    std::vector<std::vector<IwaSeries>> e;
    i64 certified_prec = -1;  // p-adic digits certified (a posteriori), -1 when not tracked
    int depth = -1;           // depth of the Frobenius product used

    const Ctx& ctx() const { return e[0][0].ctx(); }
    const IwaSeries& at(int i, int j) const { return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    IwaSeries& at(int i, int j) { return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

inline LogMatrix const_matrix(const Ctx& c, const PMat& A, const std::string& prov) {
    LogMatrix M;
    M.dim = static_cast<int>(A.size());
    M.provenance = prov;
    M.e.assign(A.size(), {});
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) M.e[i].push_back(IwaSeries::constant(c, A[i][j]));
    return M;
}

inline LogMatrix mat_mul(const LogMatrix& A, const LogMatrix& B) {
    LogMatrix C;
    C.dim = A.dim;
    C.level = std::max(A.level, B.level);
    C.k = std::max(A.k, B.k);
    C.provenance = "(" + A.provenance + ")*(" + B.provenance + ")";
    const Ctx& c = A.ctx();
    C.e.assign(static_cast<std::size_t>(A.dim), std::vector<IwaSeries>(static_cast<std::size_t>(A.dim), IwaSeries::constant(c, Padic::zero(c))));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            IwaSeries s = IwaSeries::constant(c, Padic::zero(c));
            for (int l = 0; l < A.dim; ++l) s = s + A.at(i, l) * B.at(l, j);
            C.at(i, j) = s;
        }
    C.certified_prec = std::min(A.certified_prec < 0 ? Padic::kInf : A.certified_prec, B.certified_prec < 0 ? Padic::kInf : B.certified_prec);
    if (C.certified_prec >= Padic::kInf) C.certified_prec = -1;
    return C;
}

inline LogMatrix embed(const LogMatrix& M, const Ctx& ext) {
    LogMatrix R = M;
    for (auto& row : R.e)
        for (auto& x : row) x = embed(x, ext);
    return R;
}

inline IwaSeries det2(const LogMatrix& M) { return M.at(0, 0) * M.at(1, 1) - M.at(0, 1) * M.at(1, 0); }

enum class QForm { F, G };

inline PMat q_matrix_entries(const CrystalParams& P, QForm which) {
    const Padic& a = P.alpha;
    const Padic& b = P.beta;
    Padic d = a - b;
    if (d.is_zero()) throw Error(Err::DegenerateEigenvalues, "alpha = beta at precision");
    Padic id = d.recip();
    Padic ab = a * b;
    const Ctx& c = a.ctx();
    if (which == QForm::F) return {{d * id, Padic::zero(c)}, {ab * id, -ab * id}};
    return {{a * id, -b * id}, {-ab * id, ab * id}};
}

inline LogMatrix q_matrix(const CrystalParams& P, QForm which) {
    return const_matrix(P.ext, q_matrix_entries(P, which), which == QForm::F ? "Q_f" : "Q_g");
}

inline PMat inverse2(const PMat& A) {
    Padic det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det.is_zero()) throw Error(Err::DegenerateEigenvalues, "singular 2x2 matrix");
    Padic id = det.recip();
    return {{A[1][1] * id, -A[0][1] * id}, {-A[1][0] * id, A[0][0] * id}};
}

// Frobenius matrix A_g = [[0, -1/(eps p^{k+1})], [1, a_p/(eps p^{k+1})]] in the eigen-pair form
inline PMat frobenius_matrix(const CrystalParams& P) {
    const Ctx& c = P.ext;
    Padic e = embed(P.eps, c);
    Padic ap = P.alpha + P.beta;
    Padic den = (e * Padic::from_int(c, static_cast<i64>(c->p)).pow(P.k + 1)).recip();
    return {{Padic::zero(c), -den}, {Padic::one(c), ap * den}};
}

struct WachAp0 {
    PMat Aprime;                                 // over base
    std::array<std::array<PiSeries, 2>, 2> Pinv; // P'^{-1}
    std::array<std::array<PiSeries, 2>, 2> P;    // P'
};

inline WachAp0 wach_matrices_ap0(const CrystalParams& P, std::size_t cap) {
    if (P.mode != CrystalMode::ApZero) throw Error(Err::WrongMode, "a_p = 0 mode required");
    const Ctx& c = P.base;
    WachAp0 W;
    Padic pk = Padic::from_int(c, static_cast<i64>(c->p)).pow(P.k + 1);
    Padic cc = (P.eps * pk).recip();
    W.Aprime = {{Padic::zero(c), -cc}, {Padic::one(c), Padic::zero(c)}};
    PiSeries q = q_series(c, cap);
    PiSeries qk = PiSeries::constant(c, Padic::one(c), cap);
    for (int i = 0; i <= P.k; ++i) qk = qk * q;
    PiSeries zero = PiSeries::constant(c, Padic::zero(c), cap);
    PiSeries one = PiSeries::constant(c, Padic::one(c), cap);
    W.Pinv = {{{zero, one}, {qk * (-P.eps), zero}}};
    // 1/q^{k+1} as a formal series over the fraction field
    IwaSeries qs(c, qk.coeffs(), static_cast<long>(cap));
    IwaSeries inv = divide_exact(IwaSeries(c, PVec{Padic::one(c)}, static_cast<long>(cap)), qs);
    PVec iv = inv.coeffs();
    PiSeries qinv(c, iv, cap);
    W.P = {{{zero, qinv * (-P.eps.recip())}, {one, zero}}};
    return W;
}

// ---------------------------------------------------------------------------
// elements of the group algebra of Gamma_1 with finite support: scalar * sum mult_a sigma_a,
// optionally convolved (additively in a) with a tail measure known through its moments.

struct GroupAlgebraElt {
    Ctx ctx;
    Padic scalar;
    std::vector<std::pair<u64, i64>> terms;  // (a, multiplicity), a = 1 mod p
    PVec tail;                               // moments mu_0..mu_r of the tail; empty when none
    int valid_level = -1;                    // tail present: characters of conductor <= p^{valid_level+1}

    bool zero() const { return terms.empty() || scalar.is_exact_zero(); }

    // sum_r binom(j, r) a^{j-r} mu_r
    Padic weight(u64 a, i64 j) const {
        Padic A = Padic::from_int(ctx, static_cast<i64>(a));
        if (tail.empty()) return A.pow(j);
        if (static_cast<std::size_t>(j) >= tail.size()) throw Error(Err::BadInput, "twist exceeds the stored tail moments");
        Padic s = Padic::zero(ctx);
        i64 b = 1;
        for (i64 r = 0; r <= j; ++r) {
            s += Padic::from_int(ctx, b) * A.pow(j - r) * tail[static_cast<std::size_t>(r)];
            b = b * (j - r) / (r + 1);
        }
        return s;
    }

    CycloElt eval(CharPoint pt) const {
        auto R = cyclo_ring(ctx, pt.t);
        PVec acc(static_cast<std::size_t>(R->phi()), Padic::zero(ctx));
        if (zero()) return CycloElt{R, acc};
        if (valid_level >= 0 && pt.t > valid_level) throw Error(Err::BadInput, "character conductor above the stored level");
        if (pt.j < 0) throw Error(Err::BadInput, "negative twist");
        u64 p = ctx->p;
        u64 pt_ord = R->order();
        PVec fold(pt_ord, Padic::zero(ctx));
        for (const auto& [a, mult] : terms) {
            u64 x = pt.t == 0 ? 0 : dlog_u(a, p, pt.t);
            fold[x % pt_ord] += Padic::from_int(ctx, mult) * weight(a, pt.j);
        }
        for (u64 y = 0; y < pt_ord; ++y) {
            if (fold[y].is_exact_zero()) continue;
            const PVec& z = R->zeta_pow(y);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += fold[y] * z[i];
        }
        return CycloElt{R, poly::scale(acc, scalar)};
    }

    // residues modulo Tw^{-j}(omega_n), j < m
    std::vector<PVec> components(const LevelRing& L) const {
        std::vector<PVec> g;
        u64 pn = L.pn();
        if (valid_level >= 0 && L.n() > valid_level) throw Error(Err::BadInput, "level above the stored level");
        for (int j = 0; j < L.m(); ++j) {
            PVec gj(pn, Padic::zero(ctx));
            if (!zero())
                for (const auto& [a, mult] : terms) {
                    u64 x = L.n() == 0 ? 0 : dlog_u(a, ctx->p, L.n());
                    gj[x % pn] += Padic::from_int(ctx, mult) * weight(a, j);
                }
            g.push_back(poly::scale(gj, scalar));
        }
        return g;
    }

    // sum mult_a (1+X)^{log_u a} modulo (p^N, X^D)
    IwaSeries x_series(long D) const {
        if (!tail.empty()) throw Error(Err::BadInput, "x_series needs an explicit element");
        u64 p = ctx->p;
        int lg = 0;
        for (u64 q = 1; q * p < static_cast<u64>(std::max<long>(D, 2)); q *= p) ++lg;
        int M = ctx->N + lg;
        long double bound = 1;
        for (int i = 0; i <= M; ++i) bound *= static_cast<long double>(p);
        if (bound >= static_cast<long double>(u64(1) << 62)) throw Error(Err::PrecisionLoss, "exponent precision exceeds word size");
        const u64 md = ctx->mod;
        std::size_t Dz = static_cast<std::size_t>(D);
        auto pmul = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
            std::vector<u64> r(Dz, 0);
            for (std::size_t i = 0; i < Dz; ++i) {
                if (!a[i]) continue;
                for (std::size_t j = 0; i + j < Dz; ++j)
                    if (b[j]) r[i + j] = zn::addmod(r[i + j], zn::mulmod(a[i], b[j], md), md);
            }
            return r;
        };
        std::vector<std::vector<u64>> B;
        std::vector<u64> base(Dz, 0);
        base[0] = 1 % md;
        if (Dz > 1) base[1] = 1 % md;
        for (int r = 0; r < M; ++r) {
            B.push_back(base);
            std::vector<u64> nb(Dz, 0);
            nb[0] = 1 % md;
            for (u64 i = 0; i < p; ++i) nb = pmul(nb, base);
            base = nb;
        }
        std::vector<u64> acc(Dz, 0);
        for (const auto& [a, mult] : terms) {
            u64 x = dlog_u(a, p, M);
            std::vector<u64> cur(Dz, 0);
            cur[0] = 1 % md;
            for (int r = 0; r < M && x; ++r) {
                u64 dgt = x % p;
                x /= p;
                for (u64 i = 0; i < dgt; ++i) cur = pmul(cur, B[static_cast<std::size_t>(r)]);
            }
            u64 mm = zn::reduce_signed(mult, md);
            for (std::size_t i = 0; i < Dz; ++i) acc[i] = zn::addmod(acc[i], zn::mulmod(cur[i], mm, md), md);
        }
        PVec v;
        for (u64 x : acc) v.push_back(Padic::from_coords(ctx, x) * scalar);
        if (zero()) v.assign(Dz, Padic::zero(ctx));
        return IwaSeries(ctx, v, D);
    }
};

// multiplicities of x^J in (1 + x + ... + x^{p-1})^{k+1}
inline std::vector<i64> q_multiplicities(u64 p, int k) {
    std::vector<i64> m{1};
    for (int r = 0; r <= k; ++r) {
        std::vector<i64> nm(m.size() + p - 1, 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (u64 j = 0; j < p; ++j) nm[i + j] += m[i];
        m = nm;
    }
    return m;
}

struct Ap0Product {
    int depth = 0;
    int split_level = -1;  // factors with index > split_level are folded into tail moments
    std::array<std::array<GroupAlgebraElt, 2>, 2> m;
};

// m^{-1}((1+pi) A'^{D+1} phi^D(P'^{-1}) ... phi(P'^{-1})), entries as group-algebra elements
inline Ap0Product ap0_product(const CrystalParams& P, int depth, int split_level = -1) {
    if (P.mode != CrystalMode::ApZero) throw Error(Err::WrongMode, "a_p = 0 mode required");
    const Ctx& c = P.base;
    const u64 p = c->p;
    struct Mono {
        bool nz = false;
        Padic s;
        std::vector<int> S;
    };
    using M2 = std::array<std::array<Mono, 2>, 2>;
    auto mono_mul = [&](const M2& A, const M2& B) {
        M2 C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) {
                    const Mono& a = A[i][l];
                    const Mono& b = B[l][j];
                    if (!a.nz || !b.nz) continue;
                    if (C[i][j].nz) throw Error(Err::BadInput, "non-monomial product");
                    C[i][j].nz = true;
                    C[i][j].s = a.s * b.s;
                    C[i][j].S = a.S;
                    C[i][j].S.insert(C[i][j].S.end(), b.S.begin(), b.S.end());
                }
        return C;
    };
    Padic one = Padic::one(c);
    Padic pk = Padic::from_int(c, static_cast<i64>(p)).pow(P.k + 1);
    Padic cc = (P.eps * pk).recip();
    M2 Ap;
    Ap[0][1] = {true, -cc, {}};
    Ap[1][0] = {true, one, {}};
    M2 Pi;
    Pi[0][0] = {true, one, {}};
    Pi[1][1] = {true, one, {}};
    for (int i = 1; i <= depth; ++i) {
        M2 J;
        J[0][1] = {true, one, {}};
        J[1][0] = {true, -P.eps, {i}};
        Pi = mono_mul(J, Pi);
    }
    M2 Apow;
    Apow[0][0] = {true, one, {}};
    Apow[1][1] = {true, one, {}};
    for (int i = 0; i <= depth; ++i) Apow = mono_mul(Ap, Apow);
    M2 Mm = mono_mul(Apow, Pi);

    auto mult = q_multiplicities(p, P.k);
    Ap0Product out;
    out.depth = depth;
    out.split_level = split_level;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            GroupAlgebraElt g;
            g.ctx = c;
            g.scalar = Padic::zero(c);
            if (!Mm[i][j].nz) {
                out.m[i][j] = g;
                continue;
            }
            g.scalar = Mm[i][j].s;
            std::unordered_map<u64, i64> terms{{1, 1}};
            std::vector<int> high;
            for (int idx : Mm[i][j].S) {
                if (split_level >= 0 && idx > split_level) {
                    high.push_back(idx);
                    continue;
                }
                u64 pi = zn::ipow(p, static_cast<unsigned>(idx));
                std::unordered_map<u64, i64> nt;
                for (const auto& [a, mu] : terms)
                    for (std::size_t J = 0; J < mult.size(); ++J) nt[a + J * pi] += mu * mult[J];
                terms.swap(nt);
            }
            g.terms.assign(terms.begin(), terms.end());
            std::sort(g.terms.begin(), g.terms.end());
            if (split_level >= 0) {
                g.valid_level = split_level;
                std::size_t R = static_cast<std::size_t>(P.k) + 1;
                PVec mu(R, Padic::zero(c));
                mu[0] = one;
                std::vector<std::vector<i64>> binom(R, std::vector<i64>(R, 0));
                for (std::size_t a = 0; a < R; ++a) {
                    binom[a][0] = 1;
                    for (std::size_t b = 1; b <= a; ++b) binom[a][b] = binom[a - 1][b - 1] + (b < a ? binom[a - 1][b] : 0);
                }
                for (int idx : high) {
                    Padic pi = Padic::from_int(c, static_cast<i64>(p)).pow(idx);
                    PVec nu(R, Padic::zero(c));
                    for (std::size_t r = 0; r < R; ++r) {
                        Padic s = Padic::zero(c);
                        for (std::size_t J = 0; J < mult.size(); ++J)
                            s += Padic::from_int(c, mult[J]) * (Padic::from_int(c, static_cast<i64>(J)) * pi).pow(static_cast<i64>(r));
                        nu[r] = s;
                    }
                    PVec nm(R, Padic::zero(c));
                    for (std::size_t r = 0; r < R; ++r)
                        for (std::size_t s = 0; s <= r; ++s) nm[r] += Padic::from_int(c, binom[r][s]) * mu[s] * nu[r - s];
                    mu = nm;
                }
                g.tail = mu;
            }
            out.m[i][j] = g;
        }
    return out;
}

struct Ap0Options {
    int target = 10;      // p-adic digits wanted on the reduced entries
    int max_depth = 200;
};

inline std::vector<PVec> flatten_components(const Ap0Product& pr, const LevelRing& L) {
    std::vector<PVec> all;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto g = pr.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].components(L);
            all.insert(all.end(), g.begin(), g.end());
        }
    return all;
}

struct Gap {
    i64 val = Padic::kInf;
    bool within_precision = true;  // every difference is zero at its precision
};

inline Gap component_gap(const std::vector<PVec>& a, const std::vector<PVec>& b) {
    Gap g;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a[i].size(); ++k) {
            Padic d = a[i][k] - b[i][k];
            if (d.is_zero()) g.val = std::min(g.val, d.abs_prec());
            else {
                g.val = std::min(g.val, d.val_units());
                g.within_precision = false;
            }
        }
    return g;
}

inline LogMatrix level_matrix_from(const Ap0Product& pr, const LevelRing& L, const CrystalParams& P, const std::string& prov) {
    LogMatrix M;
    M.dim = 2;
    M.level = L.n();
    M.k = P.k;
    M.provenance = prov;
    M.depth = pr.depth;
    M.e.assign(2, {});
    i64 cert = Padic::kInf;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& g = pr.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            PVec F = g.zero() ? PVec(L.dim(), Padic::zero(P.base)) : L.from_components(g.components(L));
            for (const auto& x : F)
                if (!x.is_exact_zero()) cert = std::min(cert, x.abs_prec());
            M.e[static_cast<std::size_t>(i)].push_back(IwaSeries::poly(P.base, F, Growth{P.k + 1, 2}));
        }
    M.certified_prec = cert >= Padic::kInf ? P.base->N : cert;
    return M;
}

// finite product of the given depth, reduced modulo omega_{n,k+1}
inline LogMatrix log_matrix_ap0_raw(const CrystalParams& P, int n, int depth) {
    auto L = level_ring(P.base, n, P.k + 1);
    auto pr = ap0_product(P, depth, n);
    return level_matrix_from(pr, *L, P, "ap0-product depth " + std::to_string(depth));
}

// the limit matrix modulo omega_{n,k+1}: depth raised until the residues stabilise
inline LogMatrix log_matrix_ap0(const CrystalParams& P, int n, Ap0Options opt = {}) {
    if (P.mode != CrystalMode::ApZero) throw Error(Err::WrongMode, "a_p = 0 mode required");
    auto L = level_ring(P.base, n, P.k + 1);
    // digits lost when gluing the twisted components
    i64 crt_loss = 0;
    for (int j = 1; j <= P.k; ++j)
        for (int i = 0; i < j; ++i) crt_loss += (gen_u_pow(P.base, static_cast<i64>(j - i) * static_cast<i64>(L->pn())) - Padic::one(P.base)).val_units();
    i64 want = opt.target + crt_loss;
    int D = std::max(n, 1);
    auto prev = ap0_product(P, D, n);
    auto prevc = flatten_components(prev, *L);
    int stable = 0;
    i64 lastgap = Padic::kInf;
    while (true) {
        if (D + 1 > opt.max_depth) throw Error(Err::BudgetExceeded, "log matrix did not stabilise by depth " + std::to_string(opt.max_depth));
        auto cur = ap0_product(P, D + 1, n);
        auto curc = flatten_components(cur, *L);
        Gap gap = component_gap(prevc, curc);
        ++D;
        prev = cur;
        prevc = curc;
        if (gap.val >= want || gap.within_precision) {
            ++stable;
            lastgap = std::min(lastgap, gap.val);
            if (stable >= 2) break;
        } else {
            stable = 0;
            lastgap = Padic::kInf;
        }
    }
    LogMatrix M = level_matrix_from(prev, *L, P, "ap0-limit level " + std::to_string(n));
    i64 cert = std::min<i64>(M.certified_prec, lastgap - crt_loss);
    M.certified_prec = cert;
    return M;
}

// reduce a level-N matrix modulo omega_{n,k+1}
inline LogMatrix reduce_level(const LogMatrix& M, int n) {
    auto L = level_ring(M.ctx(), n, M.k + 1);
    LogMatrix R = M;
    R.level = n;
    for (auto& row : R.e)
        for (auto& x : row) x = IwaSeries::poly(M.ctx(), L->reduce(x.coeffs()), x.growth());
    return R;
}

// Q_g^{-1} M over the coefficient ring of alpha
inline LogMatrix qinv_times(const CrystalParams& P, const LogMatrix& M) {
    PMat Qi = inverse2(q_matrix_entries(P, QForm::G));
    LogMatrix Me = embed(M, P.ext);
    LogMatrix Q = const_matrix(P.ext, Qi, "Q_g^-1");
    LogMatrix R = mat_mul(Q, Me);
    R.level = M.level;
    R.k = M.k;
    R.depth = M.depth;
    R.certified_prec = M.certified_prec;
    R.provenance = "Q_g^-1 * " + M.provenance;
    if (M.level >= 0 && M.e[0][0].is_poly()) {
        auto L = level_ring(P.ext, M.level, M.k + 1);
        for (auto& row : R.e)
            for (auto& x : row) x = IwaSeries::poly(P.ext, L->reduce(x.coeffs()), x.growth());
    }
    return R;
}

// [[u_f M_g, 0], [*, l_f Tw_{k_f+1} M_g]] with l_f = log_tw(k_f+1, n) / delta(k_f+1)
inline LogMatrix semi_ordinary_block(const LogMatrix& Mg, int k_f, const IwaSeries& u_f, const std::vector<std::vector<IwaSeries>>& lower_left, int n) {
    if (Mg.dim != 2) throw Error(Err::BadInput, "M_g must be 2x2");
    const Ctx& c = Mg.ctx();
    IwaSeries lf = divide_exact(log_tw(c, k_f + 1, n), delta(c, k_f + 1));
    LogMatrix B;
    B.dim = 4;
    B.level = Mg.level;
    B.k = Mg.k;
    B.provenance = "semi-ordinary block of " + Mg.provenance;
    IwaSeries z = IwaSeries::constant(c, Padic::zero(c));
    B.e.assign(4, std::vector<IwaSeries>(4, z));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            B.at(i, j) = u_f * Mg.at(i, j);
            B.at(2 + i, j) = lower_left[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            B.at(2 + i, 2 + j) = lf * twist(Mg.at(i, j), k_f + 1);
        }
    return B;
}

// Q_{f,g} = [[Q_g, 0], [c Q_g, -c Q_g]], c = alpha_f beta_f / (alpha_f - beta_f)
inline PMat q_fg_block(const PMat& Qg, const Padic& alpha_f, const Padic& beta_f) {
    Padic d = alpha_f - beta_f;
    if (d.is_zero()) throw Error(Err::DegenerateEigenvalues, "alpha_f = beta_f at precision");
    Padic cf = alpha_f * beta_f * d.recip();
    const Ctx& c = alpha_f.ctx();
    PMat Q(4, PVec(4, Padic::zero(c)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Qg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Q[static_cast<std::size_t>(2 + i)][static_cast<std::size_t>(j)] = cf * Qg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Q[static_cast<std::size_t>(2 + i)][static_cast<std::size_t>(2 + j)] = -cf * Qg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    return Q;
}

inline PMat inverse_dense(const PMat& A) {
    std::size_t n = A.size();
    const Ctx& c = A[0][0].ctx();
    PMat inv(n, PVec(n, Padic::zero(c)));
    for (std::size_t j = 0; j < n; ++j) {
        PVec e(n, Padic::zero(c));
        e[j] = Padic::one(c);
        auto r = solve_linear(A, e);
        if (r.rank < static_cast<int>(n)) throw Error(Err::DegenerateEigenvalues, "singular matrix");
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = r.x[i];
    }
    return inv;
}

inline LogMatrix combined(const PMat& QfgInv, const LogMatrix& Mfg) {
    LogMatrix Q = const_matrix(Mfg.ctx(), QfgInv, "Q_fg^-1");
    return mat_mul(Q, Mfg);
}

} // namespace iwlog

#endif
