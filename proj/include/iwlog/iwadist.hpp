#ifndef IWLOG_IWADIST_HPP
#define IWLOG_IWADIST_HPP

#include <map>
#include <mutex>
#include <numeric>

#include "poly.hpp"

namespace iwlog {

// topological generator value u = chi(gamma)
inline i64 gen_u(const Ctx& c) { return static_cast<i64>(c->p) + 1; }
inline Padic gen_u_pow(const Ctx& c, i64 j) { return Padic::from_int(c, gen_u(c)).pow(j); }

// binomial row C(n, 0..n) modulo m
inline std::vector<u64> binom_row(u64 n, u64 m) {
    std::vector<u64> row(1, 1 % m);
    for (u64 r = 1; r <= n; ++r) {
        row.push_back(1 % m);
        for (u64 k = r - 1; k >= 1; --k) row[k] = zn::addmod(row[k], row[k - 1], m);
    }
    return row;
}

// log_u(a) modulo p^M for a = 1 mod p, u = 1 + p
inline u64 dlog_u(u64 a, u64 p, int M) {
    u64 m = zn::ipow(p, static_cast<unsigned>(M + 1));
    a %= m;
    if (a % p != 1 % p) throw Error(Err::BadInput, "dlog of a non-principal unit");
    u64 u = p + 1;
    u64 r = a, x = 0, pi = 1;
    u64 upow = u;  // u^{p^i}
    for (int i = 0; i < M; ++i) {
        u64 pi1 = pi * p;  // p^{i+1}
        u64 digit = ((r - 1) / pi1) % p;
        if (digit) {
            u64 inv = zn::invmod(zn::powmod(upow, digit, m), p, m);
            r = zn::mulmod(r, inv, m);
            x += digit * pi;
        }
        upow = zn::powmod(upow, p, m);
        pi = pi1;
    }
    return x;
}

struct CharPoint {
    int t = 0;
    i64 j = 0;
    bool operator<(const CharPoint& o) const { return t != o.t ? t < o.t : j < o.j; }
    bool operator==(const CharPoint& o) const { return t == o.t && j == o.j; }
};

// O[zeta_{p^t}] in the basis lambda^i, lambda = zeta - 1
class CycloRing {
public:
    CycloRing(Ctx c, int t) : ctx_(std::move(c)), t_(t) {
        u64 p = ctx_->p;
        pt_ = zn::ipow(p, static_cast<unsigned>(t));
        phi_ = t == 0 ? 1 : static_cast<int>((p - 1) * zn::ipow(p, static_cast<unsigned>(t - 1)));
        const u64 m = ctx_->mod;
        std::vector<u64> E(static_cast<std::size_t>(phi_) + 1, 0);
        if (t == 0) {
            E = {0, 1};
        } else {
            u64 step = zn::ipow(p, static_cast<unsigned>(t - 1));
            for (u64 i = 0; i < p; ++i) {
                auto row = binom_row(i * step, m);
                for (std::size_t k = 0; k < row.size(); ++k) E[k] = zn::addmod(E[k], row[k], m);
            }
        }
        eis_.reserve(E.size());
        for (u64 x : E) eis_.push_back(Padic::from_coords(ctx_, x));
        // zeta^y for y < p^t
        zpow_.resize(pt_);
        PVec cur(static_cast<std::size_t>(phi_), Padic::zero(ctx_));
        cur[0] = Padic::one(ctx_);
        for (u64 y = 0; y < pt_; ++y) {
            zpow_[y] = cur;
            cur = mul(cur, zeta());
        }
        // traces of lambda^i
        std::vector<Padic> trz(pt_);
        for (u64 k = 0; k < pt_; ++k) {
            if (t == 0 || k == 0) trz[k] = Padic::from_int(ctx_, phi_);
            else if (zn::vp(k, p) == t - 1) trz[k] = Padic::from_int(ctx_, -static_cast<i64>(pt_ / p));
            else trz[k] = Padic::zero(ctx_);
        }
        trl_.assign(static_cast<std::size_t>(phi_), Padic::zero(ctx_));
        for (int i = 0; i < phi_; ++i) {
            auto row = binom_row(static_cast<u64>(i), m);
            Padic s = Padic::zero(ctx_);
            for (int k = 0; k <= i; ++k) {
                Padic b = Padic::from_coords(ctx_, row[static_cast<std::size_t>(k)]);
                if ((i - k) % 2) b = -b;
                s += b * trz[static_cast<u64>(k) % pt_];
            }
            trl_[static_cast<std::size_t>(i)] = s;
        }
    }

    const Ctx& ctx() const { return ctx_; }
    int t() const { return t_; }
    int phi() const { return phi_; }
    u64 order() const { return pt_; }

    PVec zeta() const {
        PVec z(static_cast<std::size_t>(phi_), Padic::zero(ctx_));
        if (phi_ == 1) {
            z[0] = Padic::one(ctx_);
        } else {
            z[0] = Padic::one(ctx_);
            z[1] = Padic::one(ctx_);
        }
        return z;
    }
    const PVec& zeta_pow(u64 y) const { return zpow_[y % pt_]; }

    void reduce(PVec& a) const {
        const std::size_t f = static_cast<std::size_t>(phi_);
        for (std::size_t i = a.size(); i-- > f;) {
            if (a[i].is_exact_zero()) continue;
            Padic top = a[i];
            for (std::size_t k = 0; k < f; ++k)
                if (!eis_[k].is_exact_zero()) a[i - f + k] -= top * eis_[k];
        }
        a.resize(f, Padic::zero(ctx_));
    }
    PVec mul(const PVec& a, const PVec& b) const {
        PVec r = poly::mul(a, b);
        reduce(r);
        return r;
    }
    // multiply by x = (s - 1) + s*lambda, i.e. zeta*s - 1 with s a scalar
    PVec mul_point(const PVec& a, const Padic& s) const {
        PVec r(a.size() + 1, Padic::zero(ctx_));
        Padic sm1 = s - Padic::one(ctx_);
        for (std::size_t k = 0; k < a.size(); ++k) {
            r[k] += a[k] * sm1;
            r[k + 1] += a[k] * s;
        }
        if (phi_ == 1) {
            // t = 0: zeta = 1, lambda = 0
            r.resize(1);
            return r;
        }
        reduce(r);
        return r;
    }
    Padic trace(const PVec& a) const {
        Padic s = Padic::zero(ctx_);
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * trl_[i];
        return s;
    }
    // inverse via the multiplication matrix
    PVec inv(const PVec& a) const {
        const std::size_t f = static_cast<std::size_t>(phi_);
        PMat M(f, PVec(f, Padic::zero(ctx_)));
        PVec col = a;
        for (std::size_t j = 0; j < f; ++j) {
            for (std::size_t i = 0; i < f; ++i) M[i][j] = col[i];
            PVec sh(f + 1, Padic::zero(ctx_));
            for (std::size_t i = 0; i < f; ++i) sh[i + 1] = col[i];
            if (f > 1) reduce(sh);
            else sh.resize(1);
            col = sh;
        }
        PVec e(f, Padic::zero(ctx_));
        e[0] = Padic::one(ctx_);
        auto r = solve_linear(M, e);
        if (r.rank < static_cast<int>(f)) throw Error(Err::NotDivisible, "cyclotomic element is not invertible at precision");
        return r.x;
    }

private:
    Ctx ctx_;
    int t_;
    u64 pt_;
    int phi_;
    PVec eis_;
    std::vector<PVec> zpow_;
    PVec trl_;
};

using CycloRingPtr = std::shared_ptr<const CycloRing>;

inline CycloRingPtr cyclo_ring(const Ctx& c, int t) {
    static std::mutex mu;
    static std::map<std::pair<const PrimeCtx*, int>, std::pair<std::weak_ptr<const PrimeCtx>, CycloRingPtr>> cache;
    if (t < 0) throw Error(Err::BadInput, "negative level");
    u64 phi = t == 0 ? 1 : (c->p - 1) * zn::ipow(c->p, static_cast<unsigned>(t - 1));
    if (phi > 2000) throw Error(Err::ExtensionTooLarge, "cyclotomic degree " + std::to_string(phi));
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(c.get(), t);
    auto it = cache.find(key);
    if (it != cache.end() && !it->second.first.expired()) return it->second.second;
    auto r = std::make_shared<const CycloRing>(c, t);
    cache[key] = {c, r};
    return r;
}

// Value of a series at a character point: element of O[zeta_{p^t}] (lambda basis).
struct CycloElt {
    CycloRingPtr ring;
    PVec b;

    bool is_zero() const { return poly::is_zero(b); }
    int phi() const { return ring->phi(); }

    // valuation in units of 1/(e*phi) together with a flag telling whether it is determined
    struct ValInfo {
        bool zero = false;
        bool determined = true;
        i64 num = 0;   // valuation * e * phi
        i64 den = 1;
    };
    ValInfo valuation() const {
        const Ctx& c = ring->ctx();
        const i64 f = phi();
        const i64 e = c->e;
        ValInfo vi;
        vi.den = e * f;
        i64 best = Padic::kInf, bound = Padic::kInf;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i].is_zero()) {
                if (!b[i].is_exact_zero()) bound = std::min(bound, b[i].val_units() * f + static_cast<i64>(i) * e);
            } else {
                best = std::min(best, b[i].val_units() * f + static_cast<i64>(i) * e);
            }
        }
        if (e == 2 && f > 1) {
            // the basis lambda^i pi^k is not a valuation basis when both are ramified
            vi.determined = false;
        }
        if (best >= Padic::kInf) {
            vi.zero = true;
            vi.num = bound;
            return vi;
        }
        vi.num = best;
        if (best >= bound) vi.determined = false;
        return vi;
    }
    QVal val() const {
        auto vi = valuation();
        if (vi.zero) return QVal{0, 1, true};
        return QVal{vi.num, static_cast<int>(vi.den), false};
    }
    CycloElt operator*(const CycloElt& o) const { return {ring, ring->mul(b, o.b)}; }
    CycloElt operator+(const CycloElt& o) const { return {ring, poly::add(b, o.b)}; }
    CycloElt operator-(const CycloElt& o) const { return {ring, poly::sub(b, o.b)}; }
    CycloElt scaled(const Padic& s) const { return {ring, poly::scale(b, s)}; }
    CycloElt inv() const { return {ring, ring->inv(b)}; }
};

// ---------------------------------------------------------------------------
// Iwasawa series

struct Growth {
    i64 num = 0;
    i64 den = 1;
    std::string str() const { return QVal{num, static_cast<int>(den), false}.str(); }
};

class IwaSeries {
public:
    IwaSeries() = default;
    IwaSeries(Ctx c, PVec coeffs, long cap = -1, Growth g = {}) : ctx_(std::move(c)), c_(std::move(coeffs)), cap_(cap), growth_(g) {
        if (cap_ >= 0 && c_.size() > static_cast<std::size_t>(cap_)) c_.resize(static_cast<std::size_t>(cap_));
        if (cap_ >= 0) c_.resize(static_cast<std::size_t>(cap_), Padic::zero(ctx_));
        else poly::trim(c_);
    }
    static IwaSeries poly(const Ctx& c, PVec coeffs, Growth g = {}) { return IwaSeries(c, std::move(coeffs), -1, g); }
    static IwaSeries constant(const Ctx& c, const Padic& a) { return IwaSeries(c, PVec{a}); }
    static IwaSeries X(const Ctx& c) { return IwaSeries(c, PVec{Padic::zero(c), Padic::one(c)}); }

    const Ctx& ctx() const { return ctx_; }
    const PVec& coeffs() const { return c_; }
    PVec& coeffs() { return c_; }
    bool is_poly() const { return cap_ < 0; }
    long deg_cap() const { return cap_; }
    std::size_t size() const { return c_.size(); }
    Growth growth() const { return growth_; }
    void set_growth(Growth g) { growth_ = g; }
    Padic coeff(std::size_t i) const { return i < c_.size() ? c_[i] : (is_poly() ? Padic::zero(ctx_) : Padic::zero_at(ctx_, 0)); }
    long degree() const {
        for (std::size_t i = c_.size(); i-- > 0;)
            if (!c_[i].is_zero()) return static_cast<long>(i);
        return -1;
    }

    IwaSeries truncated(long D) const {
        long cap = cap_ < 0 ? D : std::min(cap_, D);
        return IwaSeries(ctx_, c_, cap, growth_);
    }

    friend IwaSeries operator+(const IwaSeries& a, const IwaSeries& b) {
        long cap = join_cap(a.cap_, b.cap_);
        return IwaSeries(a.ctx_, poly::add(a.c_, b.c_), cap, gmax(a.growth_, b.growth_));
    }
    friend IwaSeries operator-(const IwaSeries& a, const IwaSeries& b) {
        long cap = join_cap(a.cap_, b.cap_);
        return IwaSeries(a.ctx_, poly::sub(a.c_, b.c_), cap, gmax(a.growth_, b.growth_));
    }
    friend IwaSeries operator*(const IwaSeries& a, const IwaSeries& b) {
        long cap = join_cap(a.cap_, b.cap_);
        Growth g{a.growth_.num * b.growth_.den + b.growth_.num * a.growth_.den, a.growth_.den * b.growth_.den};
        return IwaSeries(a.ctx_, poly::mul(a.c_, b.c_, cap), cap, g);
    }
    IwaSeries operator*(const Padic& s) const { return IwaSeries(ctx_, poly::scale(c_, s), cap_, growth_); }
    IwaSeries operator-() const { return *this * Padic::from_int(ctx_, -1); }

    // all coefficients zero at precision (truncated series: below the cap)
    bool is_zero() const { return poly::is_zero(c_); }

private:
    static long join_cap(long a, long b) {
        if (a < 0) return b;
        if (b < 0) return a;
        return std::min(a, b);
    }
    static Growth gmax(Growth a, Growth b) { return a.num * b.den >= b.num * a.den ? a : b; }

    Ctx ctx_;
    PVec c_;
    long cap_ = -1;
    Growth growth_;
};

// lower bound (in uniformizer units) on coefficient valuations beyond the truncation, from the growth proxy
inline i64 growth_floor(const Ctx& c, Growth g, std::size_t i, i64 C = 0) {
    u64 p = c->p;
    i64 l = 0;
    u64 q = 1;
    while (q < i + 1) {
        q *= p;
        ++l;
    }
    // -r * ceil(log_p(i+1)) - C, rounded down to uniformizer units
    i64 num = -g.num * l * c->e - C * c->e * g.den;
    i64 den = g.den;
    i64 fl = num >= 0 ? num / den : -((-num + den - 1) / den);
    return fl;
}

// growth proxy: v(c_i) >= -r ceil(log_p(i+1)) - C for every coefficient
inline bool growth_proxy_ok(const IwaSeries& F, Growth r, i64 C = 0) {
    for (std::size_t i = 0; i < F.size(); ++i) {
        const Padic& a = F.coeffs()[i];
        if (a.is_zero()) continue;
        if (a.val_units() < growth_floor(F.ctx(), r, i, C)) return false;
    }
    return true;
}

inline IwaSeries omega(const Ctx& c, int n) {
    u64 pn = zn::ipow(c->p, static_cast<unsigned>(n));
    auto row = binom_row(pn, c->mod);
    PVec v;
    v.reserve(row.size());
    for (u64 x : row) v.push_back(Padic::from_coords(c, x));
    v[0] = Padic::zero(c);
    return IwaSeries::poly(c, v);
}

inline IwaSeries divide_exact(const IwaSeries& F, const IwaSeries& G);

inline IwaSeries phi_cyc(const Ctx& c, int n) {
    if (n == 0) return IwaSeries::X(c);
    return divide_exact(omega(c, n), omega(c, n - 1));
}

// Tw^j: X -> u^j (1+X) - 1
inline IwaSeries twist(const IwaSeries& F, i64 j) {
    if (j == 0) return F;
    const Ctx& c = F.ctx();
    Padic uj = gen_u_pow(c, j);
    Padic c0 = uj - Padic::one(c);
    if (F.is_poly()) return IwaSeries::poly(c, poly::compose_linear(F.coeffs(), c0, uj), F.growth());
    long D = F.deg_cap();
    PVec r = poly::compose_linear(F.coeffs(), c0, uj, D);
    // tail sum_{i >= D} F_i (c0 + uj X)^i affects coefficient k at valuation >= (D - k) v(c0) + floor
    i64 vc0 = c0.val_units();
    for (std::size_t k = 0; k < r.size(); ++k) {
        i64 cap = static_cast<i64>(D - static_cast<long>(k)) * vc0 + growth_floor(c, F.growth(), static_cast<std::size_t>(D));
        r[k] = r[k].with_abs(cap);
    }
    return IwaSeries(c, r, D, F.growth());
}

inline IwaSeries delta(const Ctx& c, int m) {
    IwaSeries r = IwaSeries::constant(c, Padic::one(c));
    for (int i = 0; i < m; ++i) r = r * twist(IwaSeries::X(c), -i);
    return r;
}

inline IwaSeries omega_tw(const Ctx& c, int n, int m) {
    IwaSeries w = omega(c, n);
    IwaSeries r = IwaSeries::constant(c, Padic::one(c));
    for (int i = 0; i < m; ++i) r = r * twist(w, -i);
    return r;
}

inline IwaSeries phi_tw(const Ctx& c, int n, int m) {
    IwaSeries w = phi_cyc(c, n);
    IwaSeries r = IwaSeries::constant(c, Padic::one(c));
    for (int i = 0; i < m; ++i) r = r * twist(w, -i);
    return r;
}

enum class Sign { Plus, Minus };

// prod_{i<m} Tw^{-i}( prod_{k <= n, k even (+) / odd (-)} Phi_k / p )
inline IwaSeries halflog(const Ctx& c, Sign s, int m, int n) {
    Padic ip = Padic::from_int(c, static_cast<i64>(c->p)).recip();
    IwaSeries base = IwaSeries::constant(c, Padic::one(c));
    for (int k = 1; k <= n; ++k) {
        bool even = k % 2 == 0;
        if (even != (s == Sign::Plus)) continue;
        base = base * (phi_cyc(c, k) * ip);
    }
    IwaSeries r = IwaSeries::constant(c, Padic::one(c));
    for (int i = 0; i < m; ++i) r = r * twist(base, -i);
    r.set_growth(Growth{m, 2});
    return r;
}

// prod_{i<m} Tw^{-i}(omega_n) / p^{mn}, i.e. delta_m times both half-logs
inline IwaSeries log_tw(const Ctx& c, int m, int n) {
    Padic s = Padic::from_int(c, static_cast<i64>(c->p)).pow(-static_cast<i64>(m) * n);
    IwaSeries r = omega_tw(c, n, m) * s;
    r.set_growth(Growth{m, 1});
    return r;
}

// F(zeta u^j - 1)
inline CycloElt eval_at(const IwaSeries& F, CharPoint pt) {
    const Ctx& c = F.ctx();
    auto R = cyclo_ring(c, pt.t);
    Padic s = gen_u_pow(c, pt.j);
    PVec acc(static_cast<std::size_t>(R->phi()), Padic::zero(c));
    const PVec& a = F.coeffs();
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = R->mul_point(acc, s);
        acc[0] += a[i];
    }
    if (!F.is_poly()) {
        // x has valuation 1/phi (t >= 1) or v(u^j - 1) (t = 0)
        i64 f = R->phi();
        i64 e = c->e;
        i64 vx_num;  // valuation of x times e*phi
        if (pt.t >= 1) vx_num = e;
        else if (pt.j == 0) vx_num = Padic::kInf;
        else vx_num = (s - Padic::one(c)).val_units() * f;
        if (vx_num < Padic::kInf) {
            i64 K = static_cast<i64>(F.deg_cap()) * vx_num + growth_floor(c, F.growth(), static_cast<std::size_t>(F.deg_cap())) * f;
            for (std::size_t i = 0; i < acc.size(); ++i) {
                // coefficient i of lambda^i is needed mod pi^{ceil((K - i e) / f)}
                i64 num = K - static_cast<i64>(i) * e;
                i64 capi = num >= 0 ? (num + f - 1) / f : -((-num) / f);
                acc[i] = acc[i].with_abs(capi);
            }
        }
    }
    return CycloElt{R, acc};
}

inline bool is_unit(const IwaSeries& F) {
    const Padic& a = F.coeff(0);
    return !a.is_zero() && a.val_units() == 0 && [&] {
        for (const auto& x : F.coeffs())
            if (!x.is_zero() && x.val_units() < 0) return false;
        return true;
    }();
}

inline IwaSeries divide_exact(const IwaSeries& F, const IwaSeries& G) {
    const Ctx& c = F.ctx();
    if (G.is_zero()) throw Error(Err::NotDivisible, "divisor indistinguishable from 0");
    if (F.is_poly() && G.is_poly()) {
        auto [q, r] = poly::divrem(F.coeffs(), G.coeffs());
        if (!poly::is_zero(r)) throw Error(Err::NotDivisible, "nonzero remainder");
        Growth g{F.growth().num * G.growth().den - G.growth().num * F.growth().den, F.growth().den * G.growth().den};
        if (g.num < 0) g = {0, 1};
        return IwaSeries::poly(c, q, g);
    }
    // X-adic division
    std::size_t b = 0;
    while (b < G.size() && G.coeffs()[b].is_zero()) ++b;
    long D = F.is_poly() ? G.deg_cap() : (G.is_poly() ? F.deg_cap() : std::min(F.deg_cap(), G.deg_cap()));
    for (std::size_t i = 0; i < b && i < F.size(); ++i)
        if (!F.coeffs()[i].is_zero()) throw Error(Err::NotDivisible, "X-adic order of divisor exceeds dividend");
    long Dq = D - static_cast<long>(b);
    if (Dq <= 0) throw Error(Err::InsufficientDegree, "no coefficients left after division");
    Padic g0 = G.coeffs()[b].recip();
    PVec q(static_cast<std::size_t>(Dq), Padic::zero(c));
    for (long i = 0; i < Dq; ++i) {
        Padic s = F.coeff(static_cast<std::size_t>(i) + b);
        for (long k = 1; k <= i; ++k) {
            Padic gk = G.coeff(static_cast<std::size_t>(k) + b);
            if (!gk.is_exact_zero()) s -= gk * q[static_cast<std::size_t>(i - k)];
        }
        q[static_cast<std::size_t>(i)] = s * g0;
    }
    return IwaSeries(c, q, Dq, F.growth());
}

// ---------------------------------------------------------------------------
// The quotient Lambda / omega_{n,m} realised on polynomials of degree < m p^n.
// W_j = Tw^{-j}(omega_n); in Y_j = u^{-j}(1+X) the factor W_j reads Y_j^{p^n} - 1.

class LevelRing {
public:
    LevelRing(Ctx c, int n, int m) : ctx_(std::move(c)), n_(n), m_(m) {
        pn_ = zn::ipow(ctx_->p, static_cast<unsigned>(n));
        IwaSeries w = omega(ctx_, n);
        Wj_.clear();
        PVec W{Padic::one(ctx_)};
        for (int j = 0; j < m; ++j) {
            Wj_.push_back(twist(w, -j).coeffs());
            W = poly::mul(W, Wj_.back());
        }
        W_ = W;
        for (int t = 0; t <= n; ++t) rings_.push_back(cyclo_ring(ctx_, t));
        // trace table Tr(lambda^i zeta^k)
        trtab_.resize(static_cast<std::size_t>(n + 1));
        for (int t = 0; t <= n; ++t) {
            const auto& R = *rings_[static_cast<std::size_t>(t)];
            std::size_t f = static_cast<std::size_t>(R.phi());
            auto& T = trtab_[static_cast<std::size_t>(t)];
            T.assign(f, PVec(R.order(), Padic::zero(ctx_)));
            for (u64 k = 0; k < R.order(); ++k) {
                PVec cur = R.zeta_pow(k);
                for (std::size_t i = 0; i < f; ++i) {
                    T[i][k] = R.trace(cur);
                    PVec sh(f + 1, Padic::zero(ctx_));
                    for (std::size_t l = 0; l < f; ++l) sh[l + 1] = cur[l];
                    if (f > 1) R.reduce(sh);
                    else sh.resize(1);
                    cur = sh;
                }
            }
        }
        for (int j = 1; j < m; ++j) {
            Padic cj = Padic::one(ctx_);
            for (int i = 0; i < j; ++i) cj *= gen_u_pow(ctx_, static_cast<i64>(j - i) * static_cast<i64>(pn_)) - Padic::one(ctx_);
            crt_.push_back(cj.recip());
        }
    }

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    int m() const { return m_; }
    u64 pn() const { return pn_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_) * pn_; }
    const PVec& modulus() const { return W_; }
    std::vector<CharPoint> points() const {
        std::vector<CharPoint> pts;
        for (int t = 0; t <= n_; ++t)
            for (int j = 0; j < m_; ++j) pts.push_back({t, j});
        return pts;
    }
    CycloRingPtr ring(int t) const { return rings_[static_cast<std::size_t>(t)]; }

    PVec reduce(const PVec& F) const {
        PVec r = poly::rem(F, W_);
        r.resize(dim(), Padic::zero(ctx_));
        return r;
    }
    PVec mul(const PVec& A, const PVec& B) const { return reduce(poly::mul(A, B)); }

    // F mod W_j as a vector in O[Y]/(Y^{p^n} - 1), Y = u^{-j}(1+X)
    PVec component(const PVec& F, int j) const {
        Padic uj = gen_u_pow(ctx_, j);
        Padic m1 = Padic::from_int(ctx_, -1);
        PVec acc(pn_, Padic::zero(ctx_));
        for (std::size_t i = F.size(); i-- > 0;) {
            // acc <- acc * (uj Y - 1) + F_i
            PVec nx(pn_, Padic::zero(ctx_));
            for (u64 y = 0; y < pn_; ++y) {
                if (acc[y].is_exact_zero()) continue;
                nx[y] += acc[y] * m1;
                nx[(y + 1) % pn_] += acc[y] * uj;
            }
            nx[0] += F[i];
            acc = std::move(nx);
        }
        return acc;
    }
    std::vector<PVec> components(const PVec& F) const {
        std::vector<PVec> g;
        for (int j = 0; j < m_; ++j) g.push_back(component(F, j));
        return g;
    }
    PVec from_components(const std::vector<PVec>& g) const {
        PVec F;
        PVec P{Padic::one(ctx_)};
        for (int j = 0; j < m_; ++j) {
            Padic s = gen_u_pow(ctx_, -j);
            PVec Gj = poly::compose_linear(g[static_cast<std::size_t>(j)], s, s);
            if (j == 0) {
                F = Gj;
            } else {
                PVec Fj = poly::rem(F, Wj_[static_cast<std::size_t>(j)]);
                PVec h = poly::scale(poly::sub(Gj, Fj), crt_[static_cast<std::size_t>(j - 1)]);
                F = poly::add(F, poly::mul(P, h));
            }
            P = poly::mul(P, Wj_[static_cast<std::size_t>(j)]);
        }
        F.resize(dim(), Padic::zero(ctx_));
        return F;
    }
    CycloElt value_from_component(const PVec& g, int t) const {
        const auto& R = rings_[static_cast<std::size_t>(t)];
        PVec v(static_cast<std::size_t>(R->phi()), Padic::zero(ctx_));
        u64 pt = R->order();
        PVec fold(pt, Padic::zero(ctx_));
        for (u64 y = 0; y < pn_; ++y) fold[y % pt] += g[y];
        for (u64 y = 0; y < pt; ++y) {
            if (fold[y].is_zero() && fold[y].is_exact_zero()) continue;
            const PVec& z = R->zeta_pow(y);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += fold[y] * z[i];
        }
        return CycloElt{R, v};
    }
    // values[t][j]
    std::vector<std::vector<CycloElt>> values(const PVec& F) const {
        auto g = components(F);
        return values_from_components(g);
    }
    std::vector<std::vector<CycloElt>> values_from_components(const std::vector<PVec>& g) const {
        std::vector<std::vector<CycloElt>> V(static_cast<std::size_t>(n_ + 1));
        for (int t = 0; t <= n_; ++t)
            for (int j = 0; j < m_; ++j) V[static_cast<std::size_t>(t)].push_back(value_from_component(g[static_cast<std::size_t>(j)], t));
        return V;
    }
    std::vector<PVec> components_from_values(const std::vector<std::vector<CycloElt>>& V) const {
        std::vector<PVec> g;
        Padic inv_pn = Padic::from_int(ctx_, static_cast<i64>(pn_)).recip();
        for (int j = 0; j < m_; ++j) {
            PVec gj(pn_, Padic::zero(ctx_));
            for (u64 y = 0; y < pn_; ++y) {
                Padic s = Padic::zero(ctx_);
                for (int t = 0; t <= n_; ++t) {
                    const auto& T = trtab_[static_cast<std::size_t>(t)];
                    const CycloElt& v = V[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                    u64 pt = rings_[static_cast<std::size_t>(t)]->order();
                    u64 k = (pt - y % pt) % pt;
                    for (std::size_t i = 0; i < v.b.size(); ++i)
                        if (!v.b[i].is_exact_zero()) s += v.b[i] * T[i][k];
                }
                gj[y] = s * inv_pn;
            }
            g.push_back(gj);
        }
        return g;
    }
    PVec from_values(const std::vector<std::vector<CycloElt>>& V) const { return from_components(components_from_values(V)); }

private:
    Ctx ctx_;
    int n_, m_;
    u64 pn_;
    std::vector<PVec> Wj_;
    PVec W_;
    std::vector<CycloRingPtr> rings_;
    std::vector<std::vector<PVec>> trtab_;
    PVec crt_;
};

using LevelRingPtr = std::shared_ptr<const LevelRing>;

inline LevelRingPtr level_ring(const Ctx& c, int n, int m) {
    static std::mutex mu;
    static std::map<std::tuple<const PrimeCtx*, int, int>, std::pair<std::weak_ptr<const PrimeCtx>, LevelRingPtr>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({c.get(), n, m});
        if (it != cache.end() && !it->second.first.expired()) return it->second.second;
    }
    auto r = std::make_shared<const LevelRing>(c, n, m);
    std::lock_guard<std::mutex> lock(mu);
    cache[{c.get(), n, m}] = {c, r};
    return r;
}

// ---------------------------------------------------------------------------
// up-to-unit comparison

struct PointCompare {
    CharPoint pt;
    QVal vF, vG;
    bool ok = false;
};

struct UnitWitness {
    std::vector<PointCompare> points;
    bool integral = false;   // an integral u with unit constant term and u G = F mod (p^N, omega) was found
    PVec unit;               // coefficients of u modulo omega_{n,m}
};

inline PointCompare compare_values(const CycloElt& f, const CycloElt& g, CharPoint pt) {
    PointCompare pc;
    pc.pt = pt;
    auto a = f.valuation(), b = g.valuation();
    pc.vF = f.val();
    pc.vG = g.val();
    if (a.zero && b.zero) pc.ok = true;
    else if (a.zero || b.zero) pc.ok = false;
    else pc.ok = a.determined && b.determined && a.num * b.den == b.num * a.den;
    return pc;
}

// Solve u G = F in Lambda_O / omega_{n,m} for integral u with unit constant term.
inline std::optional<PVec> integral_quotient(const LevelRing& R, const PVec& Fr, const PVec& Gr) {
    const Ctx& c = R.ctx();
    std::size_t d = R.dim();
    PMat A(d, PVec(d, Padic::zero(c)));
    PVec col(d, Padic::zero(c));
    col[0] = Padic::one(c);
    for (std::size_t j = 0; j < d; ++j) {
        PVec img = R.mul(col, Gr);
        for (std::size_t i = 0; i < d; ++i) A[i][j] = img[i];
        col.assign(d, Padic::zero(c));
        if (j + 1 < d) col[j + 1] = Padic::one(c);
    }
    auto sol = solve_integral(A, Fr);
    if (!sol) return std::nullopt;
    PVec resid = poly::sub(R.mul(*sol, Gr), Fr);
    if (!poly::is_zero(resid)) return std::nullopt;
    return sol;
}

inline std::optional<UnitWitness> equal_up_to_unit_mod(const IwaSeries& F, const IwaSeries& G, int n, int m = 1, bool want_unit = true) {
    UnitWitness w;
    for (int t = 0; t <= n; ++t)
        for (int j = 0; j < m; ++j) {
            CharPoint pt{t, j};
            auto pc = compare_values(eval_at(F, pt), eval_at(G, pt), pt);
            w.points.push_back(pc);
            if (!pc.ok) return std::nullopt;
        }
    if (want_unit && F.is_poly() && G.is_poly()) {
        auto R = level_ring(F.ctx(), n, m);
        PVec Fr = R->reduce(F.coeffs()), Gr = R->reduce(G.coeffs());
        auto u = integral_quotient(*R, Fr, Gr);
        if (u && !(*u)[0].is_zero() && (*u)[0].val_units() == 0) {
            w.integral = true;
            w.unit = *u;
        }
    }
    return w;
}

} // namespace iwlog

#endif
