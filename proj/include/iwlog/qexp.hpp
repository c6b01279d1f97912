#ifndef IWLOG_QEXP_HPP
#define IWLOG_QEXP_HPP

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "padic.hpp"

namespace iwlog {

namespace ck {

inline i64 add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Err::BudgetExceeded, "integer overflow");
    return r;
}
inline i64 sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(Err::BudgetExceeded, "integer overflow");
    return r;
}
inline i64 mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Err::BudgetExceeded, "integer overflow");
    return r;
}
inline i64 pow(i64 a, int k) {
    i64 r = 1;
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

} // namespace ck

// Z[x]/(Phi_M(x)); M = 1 gives Z
class CycRing {
public:
    explicit CycRing(int M) : M_(M) {
        if (M < 1) throw Error(Err::BadInput, "cyclotomic index must be positive");
        // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d
        std::vector<i64> num(static_cast<std::size_t>(M) + 1, 0);
        num[0] = -1;
        num[static_cast<std::size_t>(M)] = 1;
        for (int d = 1; d < M; ++d)
            if (M % d == 0) num = exact_div(num, CycRing(d).phi());
        phi_ = num;
    }
    int M() const { return M_; }
    int degree() const { return static_cast<int>(phi_.size()) - 1; }
    const std::vector<i64>& phi() const { return phi_; }

    std::vector<i64> reduce(std::vector<i64> a) const {
        std::size_t d = phi_.size() - 1;
        for (std::size_t i = a.size(); i-- > d;) {
            i64 c = a[i];
            if (!c) continue;
            for (std::size_t j = 0; j <= d; ++j) a[i - d + j] = ck::sub(a[i - d + j], ck::mul(c, phi_[j]));
        }
        a.resize(d, 0);
        return a;
    }
    // x^k, k taken modulo M
    std::vector<i64> zeta(i64 k) const {
        k = ((k % M_) + M_) % M_;
        std::vector<i64> a(static_cast<std::size_t>(k) + 1, 0);
        a[static_cast<std::size_t>(k)] = 1;
        return reduce(a);
    }
    std::vector<i64> mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
        std::vector<i64> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (a[i] && b[j]) r[i + j] = ck::add(r[i + j], ck::mul(a[i], b[j]));
        return reduce(r);
    }
    std::vector<i64> add(const std::vector<i64>& a, const std::vector<i64>& b) const {
        std::vector<i64> r(static_cast<std::size_t>(degree()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ck::add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        return r;
    }
    std::vector<i64> scale(const std::vector<i64>& a, i64 s) const {
        std::vector<i64> r(static_cast<std::size_t>(degree()), 0);
        for (std::size_t i = 0; i < r.size() && i < a.size(); ++i) r[i] = ck::mul(a[i], s);
        return r;
    }
    std::vector<i64> zero() const { return std::vector<i64>(static_cast<std::size_t>(degree()), 0); }
    std::vector<i64> one() const { return zeta(0); }

private:
    static std::vector<i64> exact_div(std::vector<i64> a, const std::vector<i64>& b) {
        std::size_t db = b.size() - 1;
        std::vector<i64> q(a.size() - db, 0);
        for (std::size_t i = a.size(); i-- > db;) {
            i64 c = a[i] / b[db];
            q[i - db] = c;
            for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
        }
        return q;
    }
    int M_;
    std::vector<i64> phi_;
};

// class number one imaginary quadratic orders; omega = sqrt(D)/2 (D = 0 mod 4) or (1 + sqrt(D))/2
struct QuadOrder {
    i64 D;
    bool even() const { return D % 4 == 0; }
    // omega^2 = A + B omega
    i64 A() const { return even() ? D / 4 : (D - 1) / 4; }
    i64 B() const { return even() ? 0 : 1; }
    i64 norm(i64 x, i64 y) const {
        if (even()) return ck::sub(ck::mul(x, x), ck::mul(D / 4, ck::mul(y, y)));
        return ck::add(ck::add(ck::mul(x, x), ck::mul(x, y)), ck::mul((1 - D) / 4, ck::mul(y, y)));
    }
    std::pair<i64, i64> mul(std::pair<i64, i64> a, std::pair<i64, i64> b) const {
        auto [x1, y1] = a;
        auto [x2, y2] = b;
        i64 yy = ck::mul(y1, y2);
        i64 x = ck::add(ck::mul(x1, x2), ck::mul(yy, A()));
        i64 y = ck::add(ck::add(ck::mul(x1, y2), ck::mul(y1, x2)), ck::mul(yy, B()));
        return {x, y};
    }
    std::vector<std::pair<i64, i64>> units() const {
        std::vector<std::pair<i64, i64>> u;
        for (i64 x = -2; x <= 2; ++x)
            for (i64 y = -2; y <= 2; ++y)
                if (norm(x, y) == 1) u.push_back({x, y});
        return u;
    }
};

inline bool supported_disc(i64 D) {
    for (i64 d : {-3, -4, -7, -8, -11, -19, -43, -67, -163})
        if (d == D) return true;
    return false;
}

// element of O_K (x) Z[zeta_M]: re + omega * im
struct KCyc {
    std::vector<i64> re, im;
    bool operator==(const KCyc& o) const { return re == o.re && im == o.im; }
};

struct ImagQuadCtx {
    i64 D = -4;
    int t = 1;                    // infinity-type exponent
    i64 conductor = 1;            // rational integer generating the conductor ideal
    int M = 1;                    // values of the finite character in mu_M
    // exponent of zeta_M on residues (x mod f, y mod f); absent entries are treated as non-coprime
    std::map<std::pair<i64, i64>, i64> chi;
    bool unit_consistent = false;

    QuadOrder order() const { return QuadOrder{D}; }
    i64 chi_exp(i64 x, i64 y) const {
        if (conductor == 1) return 0;
        i64 f = conductor;
        auto it = chi.find({((x % f) + f) % f, ((y % f) + f) % f});
        if (it == chi.end()) throw Error(Err::InconsistentCharacter, "character undefined on a unit residue");
        return it->second;
    }
};

inline KCyc kc_zero(const CycRing& R) { return KCyc{R.zero(), R.zero()}; }

inline KCyc kc_mul(const CycRing& R, const QuadOrder& O, const KCyc& a, const KCyc& b) {
    auto rr = R.mul(a.re, b.re), ii = R.mul(a.im, b.im);
    KCyc c;
    c.re = R.add(rr, R.scale(ii, O.A()));
    c.im = R.add(R.add(R.mul(a.re, b.im), R.mul(a.im, b.re)), R.scale(ii, O.B()));
    return c;
}

inline KCyc kc_add(const CycRing& R, const KCyc& a, const KCyc& b) { return KCyc{R.add(a.re, b.re), R.add(a.im, b.im)}; }

// psi(alpha) = alpha^t chi(alpha)
inline KCyc psi_value(const ImagQuadCtx& K, const CycRing& R, i64 x, i64 y) {
    QuadOrder O = K.order();
    std::pair<i64, i64> a{1, 0};
    for (int i = 0; i < K.t; ++i) a = O.mul(a, {x, y});
    KCyc v{R.scale(R.one(), a.first), R.scale(R.one(), a.second)};
    KCyc z{R.zeta(K.chi_exp(x, y)), R.zero()};
    return kc_mul(R, O, v, z);
}

// sets the flag; eps^t chi(eps) = 1 for every unit
inline void check_units(ImagQuadCtx& K) {
    if (!supported_disc(K.D)) throw Error(Err::BadInput, "unsupported discriminant " + std::to_string(K.D));
    CycRing R(K.M);
    K.unit_consistent = true;
    for (auto [x, y] : K.order().units()) {
        KCyc v = psi_value(K, R, x, y);
        if (!(v == KCyc{R.one(), R.zero()})) K.unit_consistent = false;
    }
}

struct QExpansion {
    std::string ring;  // "Z", "cyclotomic:M", or "quadratic:D,cyclotomic:M"
    int M = 1;
    i64 D = 0;
    std::vector<KCyc> coeffs;  // coeffs[n-1] = a_n
    int nmax() const { return static_cast<int>(coeffs.size()); }
    bool rational() const {
        for (const auto& c : coeffs) {
            for (std::size_t i = 1; i < c.re.size(); ++i)
                if (c.re[i]) return false;
            for (i64 x : c.im)
                if (x) return false;
        }
        return true;
    }
    i64 int_coeff(int n) const {
        const KCyc& c = coeffs[static_cast<std::size_t>(n - 1)];
        return c.re.empty() ? 0 : c.re[0];
    }
};

inline void finalize_ring(QExpansion& q) {
    bool imzero = true;
    for (const auto& c : q.coeffs)
        for (i64 x : c.im) imzero = imzero && x == 0;
    if (!imzero) q.ring = "quadratic:" + std::to_string(q.D) + ",cyclotomic:" + std::to_string(q.M);
    else if (q.M <= 2) q.ring = "Z";
    else q.ring = "cyclotomic:" + std::to_string(q.M);
}

inline QExpansion theta_series(const ImagQuadCtx& K, int nmax) {
    if (!K.unit_consistent) throw Error(Err::UnitInconsistent, "eps^t chi(eps) != 1 for some unit");
    QuadOrder O = K.order();
    CycRing R(K.M);
    QExpansion q;
    q.M = K.M;
    q.D = K.D;
    q.coeffs.assign(static_cast<std::size_t>(nmax), kc_zero(R));
    auto units = O.units();
    // |y| bounded via N >= |D| y^2 / 4
    i64 ymax = 0;
    while (ck::mul(-K.D, ymax * ymax) <= 4 * static_cast<i64>(nmax)) ++ymax;
    i64 xmax = static_cast<i64>(std::sqrt(static_cast<double>(nmax))) + ymax + 2;
    for (i64 y = -ymax; y <= ymax; ++y)
        for (i64 x = -xmax; x <= xmax; ++x) {
            if (x == 0 && y == 0) continue;
            i64 n = O.norm(x, y);
            if (n < 1 || n > nmax) continue;
            std::pair<i64, i64> best{x, y};
            for (auto u : units) best = std::min(best, O.mul(u, {x, y}));
            if (best != std::pair<i64, i64>{x, y}) continue;
            if (std::gcd(n, K.conductor) != 1) continue;
            auto& slot = q.coeffs[static_cast<std::size_t>(n - 1)];
            slot = kc_add(R, slot, psi_value(K, R, x, y));
        }
    finalize_ring(q);
    return q;
}

inline QExpansion deplete(const QExpansion& f, u64 p) {
    QExpansion r = f;
    CycRing R(f.M);
    for (int n = 1; n <= r.nmax(); ++n)
        if (static_cast<u64>(n) % p == 0) r.coeffs[static_cast<std::size_t>(n - 1)] = kc_zero(R);
    return r;
}

// sum_{p !| n} sum_{d | n} d^{k-1} (zeta^d + (-1)^k zeta^{-d}) q^n, zeta = x^{zeta_index}
inline QExpansion eisenstein_depleted(int k, int M, int zeta_index, u64 p, int nmax) {
    if (std::gcd(zeta_index, M) != 1) throw Error(Err::BadInput, "zeta_index must be prime to M");
    if (k < 1) throw Error(Err::BadInput, "weight must be positive");
    CycRing R(M);
    QExpansion q;
    q.M = M;
    q.coeffs.assign(static_cast<std::size_t>(nmax), kc_zero(R));
    i64 sgn = k % 2 == 0 ? 1 : -1;
    for (int n = 1; n <= nmax; ++n) {
        if (static_cast<u64>(n) % p == 0) continue;
        std::vector<i64> s = R.zero();
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            i64 w = ck::pow(d, k - 1);
            auto term = R.add(R.zeta(static_cast<i64>(d) * zeta_index), R.scale(R.zeta(-static_cast<i64>(d) * zeta_index), sgn));
            s = R.add(s, R.scale(term, w));
        }
        q.coeffs[static_cast<std::size_t>(n - 1)].re = s;
    }
    finalize_ring(q);
    return q;
}

// local factors P_l(X), X = l^{-s}; t_n from prod 1/P_l
inline std::vector<i64> dirichlet_from_euler(const std::map<u64, std::vector<i64>>& local, int nmax) {
    std::map<u64, std::vector<i64>> powers;  // coefficients of 1/P_l up to the needed exponent
    for (const auto& [l, P] : local) {
        if (P.empty() || P[0] != 1) throw Error(Err::BadInput, "local factor must have constant term 1");
        int e = 0;
        for (u64 q = l; q <= static_cast<u64>(nmax); q *= l) ++e;
        std::vector<i64> inv(static_cast<std::size_t>(e) + 1, 0);
        inv[0] = 1;
        for (int m = 1; m <= e; ++m) {
            i64 s = 0;
            for (int j = 1; j <= m && j < static_cast<int>(P.size()); ++j) s = ck::sub(s, ck::mul(P[static_cast<std::size_t>(j)], inv[static_cast<std::size_t>(m - j)]));
            inv[static_cast<std::size_t>(m)] = s;
        }
        powers[l] = inv;
    }
    std::vector<i64> t(static_cast<std::size_t>(nmax), 0);
    for (int n = 1; n <= nmax; ++n) {
        i64 v = 1;
        u64 r = static_cast<u64>(n);
        for (u64 l = 2; l * l <= r; ++l) {
            if (r % l) continue;
            int e = 0;
            while (r % l == 0) {
                r /= l;
                ++e;
            }
            auto it = powers.find(l);
            v = it == powers.end() ? 0 : ck::mul(v, it->second[static_cast<std::size_t>(e)]);
        }
        if (r > 1) {
            auto it = powers.find(r);
            v = it == powers.end() ? 0 : ck::mul(v, it->second[1]);
        }
        t[static_cast<std::size_t>(n - 1)] = v;
    }
    return t;
}

inline int kronecker(i64 D, u64 l) {
    if (l == 2) {
        if (D % 2 == 0) return 0;
        i64 r = ((D % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    u64 a = zn::reduce_signed(D, l);
    if (a == 0) return 0;
    return zn::powmod(a, (l - 1) / 2, l) == 1 ? 1 : -1;
}

// epsilon_K(l) chi(l), as an element of Z[zeta_M]
inline std::vector<i64> nebentype_value(const ImagQuadCtx& K, u64 l) {
    if (!zn::is_prime(l)) throw Error(Err::BadPrime, std::to_string(l) + " is not prime");
    if (static_cast<i64>(l) != 0 && ((-K.D) % static_cast<i64>(l) == 0 || K.conductor % static_cast<i64>(l) == 0))
        throw Error(Err::BadPrime, std::to_string(l) + " divides the discriminant or conductor");
    CycRing R(K.M);
    return R.scale(R.zeta(K.chi_exp(static_cast<i64>(l), 0)), kronecker(K.D, l));
}

} // namespace iwlog

#endif
