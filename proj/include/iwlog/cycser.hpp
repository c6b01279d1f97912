#ifndef IWLOG_CYCSER_HPP
#define IWLOG_CYCSER_HPP

#include "iwadist.hpp"

namespace iwlog {

// truncated element of O[[pi]]
class PiSeries {
public:
    PiSeries() = default;
    PiSeries(Ctx c, PVec coeffs, std::size_t cap) : ctx_(std::move(c)), c_(std::move(coeffs)), cap_(cap) {
        c_.resize(cap_, Padic::zero(ctx_));
    }
    static PiSeries constant(const Ctx& c, const Padic& a, std::size_t cap) { return PiSeries(c, PVec{a}, cap); }
    static PiSeries pi(const Ctx& c, std::size_t cap) { return PiSeries(c, PVec{Padic::zero(c), Padic::one(c)}, cap); }
    // (1+pi)^a for a nonnegative integer
    static PiSeries one_plus_pi_pow(const Ctx& c, u64 a, std::size_t cap) {
        auto row = binom_row(a, c->mod);
        PVec v;
        for (std::size_t k = 0; k < cap && k < row.size(); ++k) v.push_back(Padic::from_coords(c, row[k]));
        return PiSeries(c, v, cap);
    }

    const Ctx& ctx() const { return ctx_; }
    std::size_t deg_cap() const { return cap_; }
    const PVec& coeffs() const { return c_; }
    PVec& coeffs() { return c_; }

    PiSeries with_cap(std::size_t cap) const { return PiSeries(ctx_, PVec(c_.begin(), c_.begin() + static_cast<long>(std::min(cap, cap_))), cap); }

    friend PiSeries operator+(const PiSeries& a, const PiSeries& b) {
        std::size_t cap = std::min(a.cap_, b.cap_);
        return PiSeries(a.ctx_, poly::add(a.c_, b.c_), cap);
    }
    friend PiSeries operator-(const PiSeries& a, const PiSeries& b) {
        std::size_t cap = std::min(a.cap_, b.cap_);
        return PiSeries(a.ctx_, poly::sub(a.c_, b.c_), cap);
    }
    friend PiSeries operator*(const PiSeries& a, const PiSeries& b) {
        std::size_t cap = std::min(a.cap_, b.cap_);
        return PiSeries(a.ctx_, poly::mul(a.c_, b.c_, static_cast<long>(cap)), cap);
    }
    PiSeries operator*(const Padic& s) const { return PiSeries(ctx_, poly::scale(c_, s), cap_); }
    bool operator==(const PiSeries& o) const { return poly::is_zero(poly::sub(c_, o.c_)); }
    bool is_zero() const { return poly::is_zero(c_); }

private:
    Ctx ctx_;
    PVec c_;
    std::size_t cap_ = 0;
};

// f(g) with g(0) = 0, modulo pi^cap
inline PiSeries compose(const PiSeries& f, const PiSeries& g, std::size_t cap) {
    const Ctx& c = f.ctx();
    PVec acc;
    const PVec& a = f.coeffs();
    PVec gc(g.coeffs().begin(), g.coeffs().begin() + static_cast<long>(std::min(cap, g.deg_cap())));
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = poly::mul(acc, gc, static_cast<long>(cap));
        if (acc.empty()) acc.push_back(Padic::zero(c));
        acc[0] += a[i];
    }
    return PiSeries(c, acc, cap);
}

inline PiSeries frobenius(const PiSeries& f, std::size_t cap = 0) {
    const Ctx& c = f.ctx();
    if (cap == 0) cap = f.deg_cap();
    if (cap < c->p) throw Error(Err::PrecisionLoss, "deg_cap below p cannot hold phi(pi)");
    PiSeries phipi = PiSeries::one_plus_pi_pow(c, c->p, cap) - PiSeries::constant(c, Padic::one(c), cap);
    return compose(f, phipi, cap);
}

// coefficients b_a with f = sum_a b_a (1+pi)^a (f read as a polynomial)
inline PVec to_power_basis(const PVec& f) {
    if (f.empty()) return {};
    const Ctx& c = f[0].ctx();
    std::size_t M = f.size();
    PVec b(M, Padic::zero(c));
    for (std::size_t k = 0; k < M; ++k) {
        if (f[k].is_exact_zero()) continue;
        auto row = binom_row(k, c->mod);
        for (std::size_t a = 0; a <= k; ++a) {
            Padic t = f[k] * Padic::from_coords(c, row[a]);
            if ((k - a) % 2) b[a] -= t;
            else b[a] += t;
        }
    }
    return b;
}

inline PVec from_power_basis(const PVec& b, std::size_t cap) {
    if (b.empty()) return {};
    const Ctx& c = b[0].ctx();
    PVec f(cap, Padic::zero(c));
    for (std::size_t a = 0; a < b.size(); ++a) {
        if (b[a].is_exact_zero()) continue;
        auto row = binom_row(a, c->mod);
        for (std::size_t k = 0; k <= a && k < cap; ++k) f[k] += b[a] * Padic::from_coords(c, row[k]);
    }
    return f;
}

// psi((1+pi)^a) = (1+pi)^{a/p} if p | a, else 0; applied to the truncated representative
inline PiSeries psi(const PiSeries& f, std::size_t cap = 0) {
    const Ctx& c = f.ctx();
    if (cap == 0) cap = f.deg_cap();
    PVec b = to_power_basis(f.coeffs());
    PVec nb((b.size() + c->p - 1) / c->p, Padic::zero(c));
    for (std::size_t a = 0; a < b.size(); a += c->p) nb[a / c->p] = b[a];
    return PiSeries(c, from_power_basis(nb, cap), cap);
}

// pi -> (1+pi)^a - 1 for a unit a of Z_p
inline PiSeries gamma_act(const Padic& a, const PiSeries& f) {
    const Ctx& c = f.ctx();
    if (a.is_zero() || a.val_units() != 0) throw Error(Err::NonUnit, "gamma_act needs a unit");
    std::size_t cap = f.deg_cap();
    u64 av = a.coords().first;
    // (1+pi)^a = prod_r ((1+pi)^{p^r})^{a_r}; the digits beyond N only move coefficients by p^{N - log_p cap}
    PVec res{Padic::one(c)};
    PVec base = PiSeries::one_plus_pi_pow(c, 1, cap).coeffs();
    u64 rest = av;
    for (int r = 0; r < c->N && rest; ++r) {
        u64 digit = rest % c->p;
        rest /= c->p;
        for (u64 k = 0; k < digit; ++k) res = poly::mul(res, base, static_cast<long>(cap));
        PVec nb{Padic::one(c)};
        for (u64 k = 0; k < c->p; ++k) nb = poly::mul(nb, base, static_cast<long>(cap));
        base = nb;
    }
    int lg = 0;
    for (u64 q = 1; q * c->p < cap; q *= c->p) ++lg;
    i64 keep = static_cast<i64>(c->N - lg) * c->e;
    res.resize(cap, Padic::zero(c));
    for (auto& x : res) x = x.with_abs(keep);
    res[0] = Padic::zero(c);
    return compose(f, PiSeries(c, res, cap), cap);
}

// element of O[(Z/p^{n+1})^x], indexed by representatives a in [1, p^{n+1}) prime to p
class FiniteGroupRingElt {
public:
    FiniteGroupRingElt() = default;
    FiniteGroupRingElt(Ctx c, int level) : ctx_(std::move(c)), level_(level) {
        mod_ = zn::ipow(ctx_->p, static_cast<unsigned>(level + 1));
        coef_.assign(mod_, Padic::zero(ctx_));
    }
    static FiniteGroupRingElt group_element(const Ctx& c, int level, i64 a) {
        FiniteGroupRingElt r(c, level);
        r[a] = Padic::one(c);
        return r;
    }

    const Ctx& ctx() const { return ctx_; }
    int level() const { return level_; }
    u64 modulus() const { return mod_; }
    Padic& operator[](i64 a) { return coef_[zn::reduce_signed(a, mod_)]; }
    const Padic& operator[](i64 a) const { return coef_[zn::reduce_signed(a, mod_)]; }
    std::vector<u64> support_indices() const {
        std::vector<u64> r;
        for (u64 a = 0; a < mod_; ++a)
            if (a % ctx_->p) r.push_back(a);
        return r;
    }
    friend FiniteGroupRingElt operator+(const FiniteGroupRingElt& x, const FiniteGroupRingElt& y) {
        FiniteGroupRingElt r = x;
        for (u64 a = 0; a < r.mod_; ++a) r.coef_[a] += y.coef_[a];
        return r;
    }
    friend FiniteGroupRingElt operator-(const FiniteGroupRingElt& x, const FiniteGroupRingElt& y) {
        FiniteGroupRingElt r = x;
        for (u64 a = 0; a < r.mod_; ++a) r.coef_[a] -= y.coef_[a];
        return r;
    }
    friend FiniteGroupRingElt operator*(const FiniteGroupRingElt& x, const FiniteGroupRingElt& y) {
        FiniteGroupRingElt r(x.ctx_, x.level_);
        for (u64 a = 1; a < x.mod_; ++a) {
            if (x.coef_[a].is_zero()) continue;
            for (u64 b = 1; b < x.mod_; ++b) {
                if (y.coef_[b].is_zero()) continue;
                r.coef_[zn::mulmod(a, b, x.mod_)] += x.coef_[a] * y.coef_[b];
            }
        }
        return r;
    }
    bool operator==(const FiniteGroupRingElt& o) const {
        for (u64 a = 0; a < mod_; ++a)
            if (!(coef_[a] - o.coef_[a]).is_zero()) return false;
        return true;
    }
    // image under the canonical surjection to a lower level
    FiniteGroupRingElt project(int level) const {
        FiniteGroupRingElt r(ctx_, level);
        for (u64 a = 0; a < mod_; ++a)
            if (!coef_[a].is_exact_zero()) r.coef_[a % r.mod_] += coef_[a];
        return r;
    }

private:
    Ctx ctx_;
    int level_ = 0;
    u64 mod_ = 1;
    PVec coef_;
};

// lambda -> lambda . (1+pi) = sum_a lambda_a (1+pi)^a, modulo pi^cap
inline PiSeries mellin(const FiniteGroupRingElt& l, std::size_t cap = 0) {
    const Ctx& c = l.ctx();
    if (cap == 0) cap = l.modulus();
    PVec b(l.modulus(), Padic::zero(c));
    for (u64 a : l.support_indices()) b[a] = l[static_cast<i64>(a)];
    return PiSeries(c, from_power_basis(b, cap), cap);
}

inline FiniteGroupRingElt mellin_inverse(const PiSeries& h, int n) {
    const Ctx& c = h.ctx();
    u64 M = zn::ipow(c->p, static_cast<unsigned>(n + 1));
    if (h.deg_cap() < M) throw Error(Err::InsufficientDegree, "deg_cap below p^{n+1}");
    PVec f(h.coeffs().begin(), h.coeffs().begin() + static_cast<long>(M));
    PVec b = to_power_basis(f);
    FiniteGroupRingElt r(c, n);
    for (u64 a = 0; a < M; ++a) {
        if (a % c->p == 0) {
            if (!b[a].is_zero()) throw Error(Err::NotInImage, "psi-nonzero component at a = " + std::to_string(a));
            continue;
        }
        r[static_cast<i64>(a)] = b[a];
    }
    return r;
}

// Delta-isotypic projection e_theta for theta = omega^i (Teichmuller character power)
inline FiniteGroupRingElt e_theta(const FiniteGroupRingElt& l, int i) {
    const Ctx& c = l.ctx();
    u64 p = c->p, M = l.modulus();
    FiniteGroupRingElt r(c, l.level());
    Padic inv = Padic::from_int(c, static_cast<i64>(p - 1)).recip();
    for (u64 d = 1; d < p; ++d) {
        Padic td = teichmuller(c, static_cast<i64>(d));
        Padic w = td.pow(-i) * inv;
        u64 dl = zn::powmod(d, zn::ipow(p, static_cast<unsigned>(l.level() + 1)), M);  // Teichmuller lift mod p^{n+1}
        for (u64 a = 1; a < M; ++a) {
            if (a % p == 0 || l[static_cast<i64>(a)].is_zero()) continue;
            r[static_cast<i64>(zn::mulmod(dl, a, M))] += l[static_cast<i64>(a)] * w;
        }
    }
    return r;
}

// q = phi(pi)/pi
inline PiSeries q_series(const Ctx& c, std::size_t cap) {
    PiSeries phipi = PiSeries::one_plus_pi_pow(c, c->p, cap + 1) - PiSeries::constant(c, Padic::one(c), cap + 1);
    PVec q(phipi.coeffs().begin() + 1, phipi.coeffs().end());
    return PiSeries(c, q, cap);
}

} // namespace iwlog

#endif
