#ifndef IWLOG_SPLIT_HPP
#define IWLOG_SPLIT_HPP

#include "logmat.hpp"

namespace iwlog {

struct SignedPair {
    IwaSeries plus;
    IwaSeries minus;
    int level = 0;
    int denom_exp = 0;
};

struct AlphaBetaPair {
    IwaSeries alpha;
    IwaSeries beta;
    int level = 0;
};

inline AlphaBetaPair forward(const SignedPair& s, const LogMatrix& A) {
    if (A.dim != 2) throw Error(Err::BadInput, "forward needs a 2x2 matrix");
    AlphaBetaPair r;
    r.level = A.level;
    r.alpha = A.at(0, 0) * s.plus + A.at(0, 1) * s.minus;
    r.beta = A.at(1, 0) * s.plus + A.at(1, 1) * s.minus;
    if (A.at(0, 0).is_poly() && s.plus.is_poly()) {
        auto L = level_ring(A.ctx(), A.level, A.k + 1);
        r.alpha = IwaSeries::poly(A.ctx(), L->reduce(r.alpha.coeffs()), r.alpha.growth());
        r.beta = IwaSeries::poly(A.ctx(), L->reduce(r.beta.coeffs()), r.beta.growth());
    }
    return r;
}

// delta_{k+1} times the twisted even (+) or odd (-) products of Phi_i, 1 <= i <= n
inline IwaSeries signed_modulus(const Ctx& c, Sign s, int n, int m) {
    IwaSeries r = delta(c, m);
    for (int i = 1; i <= n; ++i)
        if ((i % 2 == 0) == (s == Sign::Plus)) r = r * phi_tw(c, i, m);
    return r;
}

namespace detail {

// x / y in a cyclotomic ring, y nonzero
inline CycloElt cdiv(const CycloElt& x, const CycloElt& y) { return x * y.inv(); }

inline CycloElt czero(const CycloRingPtr& R) { return CycloElt{R, PVec(static_cast<std::size_t>(R->phi()), Padic::zero(R->ctx()))}; }

} // namespace detail

// Solve [L_alpha; L_beta] = A [L_+; L_-] modulo omega_{n,k+1}; L_+ is returned modulo delta omega^+,
// L_- modulo delta omega^- (the parts the matrix determines).
inline SignedPair signed_split(const AlphaBetaPair& ab, const LogMatrix& A, int n) {
    if (A.dim != 2) throw Error(Err::BadInput, "signed_split needs a 2x2 matrix");
    if (A.level < n) throw Error(Err::BadInput, "matrix level below requested level");
    const Ctx& c = A.ctx();
    int m = A.k + 1;
    auto L = level_ring(c, n, m);
    std::vector<std::vector<CycloElt>> Vp(static_cast<std::size_t>(n + 1)), Vm(static_cast<std::size_t>(n + 1));
    auto Va = L->values(L->reduce(ab.alpha.coeffs()));
    auto Vb = L->values(L->reduce(ab.beta.coeffs()));
    std::array<std::array<std::vector<std::vector<CycloElt>>, 2>, 2> VA;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) VA[i][j] = L->values(L->reduce(A.at(i, j).coeffs()));
    for (int t = 0; t <= n; ++t)
        for (int j = 0; j < m; ++j) {
            std::size_t ti = static_cast<std::size_t>(t), ji = static_cast<std::size_t>(j);
            const CycloElt &a = VA[0][0][ti][ji], &b = VA[0][1][ti][ji], &cc = VA[1][0][ti][ji], &d = VA[1][1][ti][ji];
            const CycloElt &x = Va[ti][ji], &y = Vb[ti][ji];
            auto R = L->ring(t);
            CycloElt zp = detail::czero(R), zm = detail::czero(R);
            CycloElt det = a * d - b * cc;
            bool col1 = !(a.is_zero() && cc.is_zero());
            bool col2 = !(b.is_zero() && d.is_zero());
            if (!det.is_zero()) {
                CycloElt id = det.inv();
                zp = (d * x - b * y) * id;
                zm = (a * y - cc * x) * id;
            } else if (col1 || col2) {
                // rank one: only the surviving column's coordinate is determined
                const CycloElt& u = col1 ? a : b;
                const CycloElt& v = col1 ? cc : d;
                bool use_u = !u.is_zero() && (v.is_zero() || u.valuation().num * v.valuation().den <= v.valuation().num * u.valuation().den);
                CycloElt s = use_u ? detail::cdiv(x, u) : detail::cdiv(y, v);
                CycloElt res = use_u ? y - v * s : x - u * s;
                if (!res.is_zero())
                    throw Error(Err::NoBoundedSolution, "inconsistent at character point (" + std::to_string(t) + "," + std::to_string(j) + ")");
                (col1 ? zp : zm) = s;
            } else if (!x.is_zero() || !y.is_zero()) {
                throw Error(Err::NoBoundedSolution, "nonzero value where the matrix vanishes at (" + std::to_string(t) + "," + std::to_string(j) + ")");
            }
            Vp[ti].push_back(zp);
            Vm[ti].push_back(zm);
        }
    PVec zp = L->from_values(Vp), zm = L->from_values(Vm);
    SignedPair out;
    out.level = n;
    out.plus = IwaSeries::poly(c, poly::rem(zp, signed_modulus(c, Sign::Plus, n, m).coeffs()));
    out.minus = IwaSeries::poly(c, poly::rem(zm, signed_modulus(c, Sign::Minus, n, m).coeffs()));
    return out;
}

// Weierstrass division by a fixed f, truncated or polynomial, with a unit coefficient after removing its content
class WeierstrassDivisor {
public:
    explicit WeierstrassDivisor(const IwaSeries& f) : f_(f) {
        c_ = f.ctx();
        mu_ = Padic::kInf;
        for (const auto& x : f.coeffs())
            if (!x.is_zero()) mu_ = std::min(mu_, x.val_units());
        if (mu_ >= Padic::kInf) throw Error(Err::NotDivisible, "divisor indistinguishable from 0");
        scale_ = Padic::uniformizer(c_).pow(-mu_);
        IwaSeries fs = f * scale_;
        while (lam_ < fs.size() && (fs.coeffs()[lam_].is_zero() || fs.coeffs()[lam_].val_units() > 0)) ++lam_;
        if (lam_ >= fs.size()) throw Error(Err::NotDivisible, "no unit coefficient within the truncation");
        D_ = f.is_poly() ? -1 : f.deg_cap();
        long Dp = D_ < 0 ? static_cast<long>(fs.size()) : D_;
        IwaSeries fD = fs.truncated(Dp);
        PVec low(fD.coeffs().begin(), fD.coeffs().begin() + static_cast<long>(std::min(lam_, fD.size())));
        IwaSeries B(c_, low, Dp);
        IwaSeries C = tau(fD);
        IwaSeries one(c_, PVec{Padic::one(c_)}, C.deg_cap());
        Ci_ = divide_exact(one, C);
        BC_ = B * Ci_;
    }

    int lambda() const { return static_cast<int>(lam_); }
    i64 mu() const { return mu_; }

    // g = q f + r with deg r < lambda
    std::pair<IwaSeries, IwaSeries> divide(const IwaSeries& g) const {
        long D = D_ < 0 ? (g.is_poly() ? static_cast<long>(std::max(g.size(), f_.size())) : g.deg_cap()) : (g.is_poly() ? D_ : std::min(g.deg_cap(), D_));
        IwaSeries term = tau(g.truncated(D));
        IwaSeries h = term;
        while (!term.is_zero() && floor_of(term, false) < floor_of(h, true)) {
            term = -tau(BC_ * term);
            h = h + term;
        }
        IwaSeries q = h * Ci_ * scale_;
        IwaSeries r = g.truncated(q.deg_cap()) - q * f_;
        PVec rl(r.coeffs().begin(), r.coeffs().begin() + static_cast<long>(std::min(lam_, r.size())));
        return {q, IwaSeries::poly(c_, rl)};
    }

private:
    IwaSeries tau(const IwaSeries& h) const {
        PVec v;
        for (std::size_t i = lam_; i < h.size(); ++i) v.push_back(h.coeffs()[i]);
        long cap = h.is_poly() ? -1 : h.deg_cap() - static_cast<long>(lam_);
        if (!h.is_poly() && cap <= 0) throw Error(Err::InsufficientDegree, "truncation too short for Weierstrass division");
        return IwaSeries(c_, v, cap);
    }
    static i64 floor_of(const IwaSeries& x, bool prec) {
        i64 r = Padic::kInf;
        for (const auto& a : x.coeffs()) r = std::min(r, prec ? a.abs_prec() : (a.is_zero() ? a.abs_prec() : a.val_units()));
        return r;
    }

    IwaSeries f_;
    Ctx c_;
    i64 mu_ = 0;
    Padic scale_;
    std::size_t lam_ = 0;
    long D_ = -1;
    IwaSeries Ci_, BC_;
};

struct WDiv {
    IwaSeries q;
    IwaSeries r;
    int lambda = 0;
    i64 mu = 0;  // content of the divisor, in uniformizer units
};

inline WDiv weierstrass_divide(const IwaSeries& g, const IwaSeries& f) {
    WeierstrassDivisor W(f);
    auto [q, r] = W.divide(g);
    return WDiv{q, r, W.lambda(), W.mu()};
}

// L / det(A); exact X-adic division when det(A)(0) is a unit multiple of a power of the uniformizer,
// Weierstrass division otherwise
inline IwaSeries antisym_factor(const IwaSeries& Lv, const WeierstrassDivisor& det) {
    if (Lv.is_zero()) return Lv;
    auto [q, r] = det.divide(Lv);
    if (!r.is_zero()) throw Error(Err::NotDivisible, "L is not divisible by det at precision");
    q.set_growth(Growth{});
    return q;
}

inline IwaSeries antisym_factor(const IwaSeries& Lv, const LogMatrix& A) {
    if (A.dim != 2) throw Error(Err::BadInput, "antisym_factor needs a 2x2 matrix");
    if (Lv.is_zero()) return Lv;
    return antisym_factor(Lv, WeierstrassDivisor(det2(A)));
}

// vanishing at every (t, j), t <= n, j <= k
inline bool logdiv_check(const IwaSeries& Lv, int k, int n) {
    for (int t = 0; t <= n; ++t)
        for (int j = 0; j <= k; ++j)
            if (!eval_at(Lv, {t, j}).is_zero()) return false;
    return true;
}

// entries as X-series of the finite product of depth `depth` (no tail)
inline LogMatrix log_matrix_ap0_series(const CrystalParams& P, int depth, long D) {
    auto pr = ap0_product(P, depth);
    LogMatrix M;
    M.dim = 2;
    M.level = depth;
    M.k = P.k;
    M.depth = depth;
    M.provenance = "ap0-product series depth " + std::to_string(depth);
    M.e.assign(2, {});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M.e[static_cast<std::size_t>(i)].push_back(pr.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].x_series(D));
    return M;
}

} // namespace iwlog

#endif
