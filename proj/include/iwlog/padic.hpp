#ifndef IWLOG_PADIC_HPP
#define IWLOG_PADIC_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iwlog {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class Err {
    NonUnit,
    NoRoot,
    PrecisionLoss,
    NotInImage,
    InsufficientDegree,
    ExtensionTooLarge,
    NotDivisible,
    NoUnitWitness,
    DegenerateEigenvalues,
    WrongMode,
    NoBoundedSolution,
    BudgetExceeded,
    InconsistentCharacter,
    UnitInconsistent,
    BadPrime,
    BadInput,
};

inline const char* err_name(Err e) {
    switch (e) {
    case Err::NonUnit: return "NonUnit";
    case Err::NoRoot: return "NoRoot";
    case Err::PrecisionLoss: return "PrecisionLoss";
    case Err::NotInImage: return "NotInImage";
    case Err::InsufficientDegree: return "InsufficientDegree";
    case Err::ExtensionTooLarge: return "ExtensionTooLarge";
    case Err::NotDivisible: return "NotDivisible";
    case Err::NoUnitWitness: return "NoUnitWitness";
    case Err::DegenerateEigenvalues: return "DegenerateEigenvalues";
    case Err::WrongMode: return "WrongMode";
    case Err::NoBoundedSolution: return "NoBoundedSolution";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::InconsistentCharacter: return "InconsistentCharacter";
    case Err::UnitInconsistent: return "UnitInconsistent";
    case Err::BadPrime: return "BadPrime";
    case Err::BadInput: return "BadInput";
    }
    return "Unknown";
}

struct Error : std::runtime_error {
    Err kind;
    Error(Err k, const std::string& msg) : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

namespace zn {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}
inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}
inline i64 egcd_inv(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = a;
    while (a1) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) return 0;
    return x < 0 ? x + m : x;
}
// inverse modulo m = p^N for a unit a; Newton lifting avoids signed overflow for large m
inline u64 invmod(u64 a, u64 p, u64 m) {
    a %= m;
    u64 x = static_cast<u64>(egcd_inv(static_cast<i64>(a % p), static_cast<i64>(p)));
    if (x == 0) throw Error(Err::NonUnit, "residue is not invertible");
    for (u64 q = p; q < m;) {
        // x <- x (2 - a x)
        u64 ax = mulmod(a, x, m);
        x = mulmod(x, submod(2 % m, ax, m), m);
        q = (q > m / q) ? m : q * q;
    }
    return x;
}
inline int vp(u64 a, u64 p) {
    if (a == 0) return std::numeric_limits<int>::max();
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
inline u64 reduce_signed(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(m)) : static_cast<u64>(r);
}

} // namespace zn

enum class ExtKind { None, Unramified, Ramified };

struct PrimeCtx {
    u64 p = 3;
    int N = 20;
    ExtKind ext = ExtKind::None;
    u64 unit_c = 0;  // ramified: pi^2 = unit_c * p
    u64 d = 0;       // w^2 = d
    u64 mod = 0;     // p^N
    int e = 1;       // ramification index

    int degree() const { return ext == ExtKind::None ? 1 : 2; }
    int cap() const { return e * N; }

    u64 pow_p(int k) const { return k >= N ? 0 : zn::ipow(p, static_cast<unsigned>(k)); }

    void mul_coords_into(u64& a, u64& b, u64 a2, u64 b2) const {
        if (degree() == 1) {
            a = zn::mulmod(a, a2, mod);
            return;
        }
        u64 na = zn::addmod(zn::mulmod(a, a2, mod), zn::mulmod(zn::mulmod(b, b2, mod), d, mod), mod);
        u64 nb = zn::addmod(zn::mulmod(a, b2, mod), zn::mulmod(b, a2, mod), mod);
        a = na;
        b = nb;
    }
    void inv_coords(u64& a, u64& b) const {
        if (degree() == 1) {
            a = zn::invmod(a, p, mod);
            return;
        }
        u64 n = zn::submod(zn::mulmod(a, a, mod), zn::mulmod(zn::mulmod(b, b, mod), d, mod), mod);
        u64 ni = zn::invmod(n, p, mod);
        a = zn::mulmod(a, ni, mod);
        b = zn::mulmod((mod - b) % mod, ni, mod);
    }
    // multiply a + b w by pi^k
    void shift_coords(u64& a, u64& b, i64 k) const {
        if (k <= 0) return;
        if (e == 1) {
            u64 f = k >= N ? 0 : zn::ipow(p, static_cast<unsigned>(k));
            a = zn::mulmod(a, f, mod);
            b = zn::mulmod(b, f, mod);
            return;
        }
        if (k >= 2 * N + 2) {
            a = b = 0;
            return;
        }
        i64 m = k / 2;
        if (m > 0) {
            u64 f = zn::powmod(d, static_cast<u64>(m), mod);
            a = zn::mulmod(a, f, mod);
            b = zn::mulmod(b, f, mod);
        }
        if (k & 1) {
            u64 na = zn::mulmod(b, d, mod);
            b = a;
            a = na;
        }
    }
    // divide a + b w by pi^k, assuming divisibility
    void unshift_coords(u64& a, u64& b, int k) const {
        if (k <= 0) return;
        if (e == 1) {
            u64 f = zn::ipow(p, static_cast<unsigned>(k));
            a /= f;
            b /= f;
            return;
        }
        u64 ci = zn::invmod(unit_c, p, mod);
        for (int i = 0; i < k; ++i) {
            u64 na = b;
            u64 nb = zn::mulmod(a / p, ci, mod);
            a = na;
            b = nb;
        }
    }
    int coord_val(u64 a, u64 b) const {
        if (e == 1) {
            int v = std::min(zn::vp(a, p), zn::vp(b, p));
            return std::min(v, N);
        }
        int va = zn::vp(a, p), vb = zn::vp(b, p);
        i64 v = std::min<i64>(va >= N ? 2 * N : 2 * static_cast<i64>(va), vb >= N ? 2 * N : 2 * static_cast<i64>(vb) + 1);
        return static_cast<int>(std::min<i64>(v, 2 * N));
    }
    void truncate_coords(u64& a, u64& b, i64 keep) const {
        if (keep >= cap()) return;
        if (keep <= 0) {
            a = b = 0;
            return;
        }
        if (e == 1) {
            u64 f = zn::ipow(p, static_cast<unsigned>(keep));
            a %= f;
            b %= f;
            return;
        }
        a %= zn::ipow(p, static_cast<unsigned>((keep + 1) / 2));
        b %= zn::ipow(p, static_cast<unsigned>(keep / 2));
    }
};

using Ctx = std::shared_ptr<const PrimeCtx>;

inline Ctx make_ctx(u64 p, int N, ExtKind ext = ExtKind::None, u64 c = 1) {
    if (p < 3 || !zn::is_prime(p)) throw Error(Err::BadInput, "p must be an odd prime");
    if (N < 1) throw Error(Err::BadInput, "precision must be positive");
    long double bound = 1;
    for (int i = 0; i < N; ++i) bound *= static_cast<long double>(p);
    if (bound >= static_cast<long double>(u64(1) << 62)) throw Error(Err::BadInput, "p^N exceeds 2^62");
    auto c_ = std::make_shared<PrimeCtx>();
    c_->p = p;
    c_->N = N;
    c_->ext = ext;
    c_->mod = zn::ipow(p, static_cast<unsigned>(N));
    if (ext == ExtKind::Unramified) {
        u64 nr = 2;
        while (zn::powmod(nr, (p - 1) / 2, p) != p - 1) ++nr;
        c_->d = nr;
    } else if (ext == ExtKind::Ramified) {
        if (c % p == 0) throw Error(Err::BadInput, "ramified constant must be a unit");
        c_->unit_c = c % p == 0 ? 1 : c % c_->mod;
        c_->d = zn::mulmod(c_->unit_c, p, c_->mod);
        c_->e = 2;
    }
    return c_;
}

struct QVal {
    i64 num = 0;
    int den = 1;
    bool inf = false;
    bool operator==(const QVal& o) const {
        if (inf || o.inf) return inf == o.inf;
        return num * o.den == o.num * den;
    }
    bool operator<(const QVal& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return num * o.den < o.num * den;
    }
    std::string str() const {
        if (inf) return "inf";
        i64 g = std::abs(num), h = den;
        while (h) {
            i64 t = g % h;
            g = h;
            h = t;
        }
        if (g == 0) g = 1;
        i64 n = num / g, d = den / g;
        return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
    }
};

// Floating p-adic number: pi^v * unit, unit known to rel uniformizer digits.
class Padic {
public:
    static constexpr i64 kInf = std::numeric_limits<i64>::max() / 4;

    Padic() = default;
    explicit Padic(Ctx c) : ctx_(std::move(c)), zero_(true), v_(kInf) {}

    static Padic zero(const Ctx& c) { return Padic(c); }
    static Padic zero_at(const Ctx& c, i64 absprec) {
        Padic z(c);
        z.v_ = absprec;
        return z;
    }
    static Padic from_int(const Ctx& c, i64 n) {
        if (n == 0) return zero(c);
        u64 p = c->p;
        int v = 0;
        u64 a = static_cast<u64>(n < 0 ? -n : n);
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        Padic r(c);
        r.zero_ = false;
        u64 ua = a % c->mod;
        if (n < 0) ua = (c->mod - ua) % c->mod;
        r.a_ = ua;
        r.b_ = 0;
        r.rel_ = c->cap();
        r.v_ = static_cast<i64>(v) * c->e;
        if (c->e == 2 && v > 0) {
            // p = pi^2 / c
            u64 ci = zn::invmod(c->unit_c, p, c->mod);
            r.a_ = zn::mulmod(r.a_, zn::powmod(ci, static_cast<u64>(v), c->mod), c->mod);
        }
        return r;
    }
    static Padic one(const Ctx& c) { return from_int(c, 1); }
    static Padic from_rational(const Ctx& c, i64 num, i64 den) {
        return from_int(c, num) / from_int(c, den);
    }
    // element a + b*w with a, b taken as exact residues mod p^N (given at full precision)
    static Padic from_coords(const Ctx& c, u64 a, u64 b = 0, i64 absprec = kInf) {
        Padic r(c);
        r.zero_ = false;
        r.a_ = a % c->mod;
        r.b_ = c->degree() == 2 ? b % c->mod : 0;
        r.v_ = 0;
        r.rel_ = c->cap();
        r.normalize(std::min<i64>(absprec, c->cap()));
        return r;
    }
    // the generator w of the extension (w^2 = d); pi_e in the ramified case
    static Padic gen(const Ctx& c) {
        if (c->degree() != 2) throw Error(Err::BadInput, "no extension declared");
        return from_coords(c, 0, 1);
    }
    static Padic uniformizer(const Ctx& c) {
        if (c->e == 2) return gen(c);
        return from_int(c, static_cast<i64>(c->p));
    }
    static Padic pi_pow(const Ctx& c, i64 k) {
        Padic r = one(c);
        r.v_ = k;
        return r;
    }

    const Ctx& ctx() const { return ctx_; }
    bool valid() const { return static_cast<bool>(ctx_); }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ >= kInf; }
    // valuation in uniformizer units; for zero returns the absolute precision
    i64 val_units() const { return v_; }
    QVal val() const {
        if (zero_) return QVal{0, 1, true};
        return QVal{v_, ctx_->e, false};
    }
    i64 abs_prec() const { return zero_ ? v_ : v_ + rel_; }
    int rel_prec() const { return zero_ ? 0 : rel_; }
    bool is_unit() const { return !zero_ && v_ == 0; }
    u64 unit_a() const { return a_; }
    u64 unit_b() const { return b_; }

    Padic operator-() const {
        if (zero_) return *this;
        Padic r = *this;
        r.a_ = (ctx_->mod - a_) % ctx_->mod;
        r.b_ = (ctx_->mod - b_) % ctx_->mod;
        return r;
    }

    friend Padic operator+(const Padic& x, const Padic& y) {
        if (!x.ctx_) return y;
        if (!y.ctx_) return x;
        const Ctx& c = x.ctx_;
        i64 ax = x.abs_prec(), ay = y.abs_prec();
        i64 ab = std::min(ax, ay);
        if (x.zero_ && y.zero_) return zero_at(c, ab);
        if (x.zero_) return y.with_abs(ab);
        if (y.zero_) return x.with_abs(ab);
        i64 v = std::min(x.v_, y.v_);
        if (ab <= v) return zero_at(c, ab);
        u64 a1 = x.a_, b1 = x.b_, a2 = y.a_, b2 = y.b_;
        if (x.v_ > v) x.shift_up(a1, b1, x.v_ - v);
        if (y.v_ > v) y.shift_up(a2, b2, y.v_ - v);
        Padic r(c);
        r.zero_ = false;
        r.a_ = zn::addmod(a1, a2, c->mod);
        r.b_ = zn::addmod(b1, b2, c->mod);
        r.v_ = v;
        r.rel_ = static_cast<int>(std::min<i64>(ab - v, c->cap()));
        r.renormalize();
        return r;
    }
    friend Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }
    friend Padic operator*(const Padic& x, const Padic& y) {
        const Ctx& c = x.ctx_;
        if (x.is_exact_zero() || y.is_exact_zero()) return zero(c ? c : y.ctx_);
        if (x.zero_ && y.zero_) return zero_at(c, sat_add(x.v_, y.v_));
        if (x.zero_) return zero_at(c, sat_add(x.v_, y.v_));
        if (y.zero_) return zero_at(c, sat_add(y.v_, x.v_));
        Padic r(c);
        r.zero_ = false;
        r.v_ = x.v_ + y.v_;
        r.rel_ = std::min(x.rel_, y.rel_);
        r.a_ = x.a_;
        r.b_ = x.b_;
        c->mul_coords_into(r.a_, r.b_, y.a_, y.b_);
        return r;
    }
    // field inverse for nonzero elements
    Padic recip() const {
        if (zero_) throw Error(Err::NonUnit, "element indistinguishable from 0");
        Padic r = *this;
        r.v_ = -v_;
        ctx_->inv_coords(r.a_, r.b_);
        return r;
    }
    // inverse restricted to units
    Padic inv() const {
        if (zero_) throw Error(Err::NonUnit, "element indistinguishable from 0");
        if (v_ != 0) throw Error(Err::NonUnit, "element has positive valuation");
        return recip();
    }
    friend Padic operator/(const Padic& x, const Padic& y) { return x * y.recip(); }
    Padic& operator+=(const Padic& y) { return *this = *this + y; }
    Padic& operator-=(const Padic& y) { return *this = *this - y; }
    Padic& operator*=(const Padic& y) { return *this = *this * y; }

    Padic pow(i64 e) const {
        if (e < 0) return recip().pow(-e);
        Padic r = one(ctx_), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // equality at the joint precision
    friend bool operator==(const Padic& x, const Padic& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Padic& x, const Padic& y) { return !(x == y); }

    Padic with_abs(i64 ab) const {
        if (zero_) return zero_at(ctx_, std::min(v_, ab));
        if (ab <= v_) return zero_at(ctx_, ab);
        Padic r = *this;
        r.rel_ = static_cast<int>(std::min<i64>(rel_, ab - v_));
        return r;
    }
    Padic mul_pi_pow(i64 k) const {
        Padic r = *this;
        if (zero_) {
            if (!is_exact_zero()) r.v_ += k;
            return r;
        }
        r.v_ += k;
        return r;
    }

    // integral representative coords (a, b) of value mod p^N; requires valuation >= 0
    std::pair<u64, u64> coords() const {
        if (zero_) return {0, 0};
        if (v_ < 0) throw Error(Err::BadInput, "element is not integral");
        u64 a = a_, b = b_;
        shift_up(a, b, v_);
        i64 keep = std::min<i64>(abs_prec(), ctx_->cap());
        ctx_->truncate_coords(a, b, keep);
        return {a, b};
    }
    // residue of the first coordinate of the unit part modulo p
    u64 unit_residue() const { return zero_ ? 0 : a_ % ctx_->p; }

    // lift of element of Z_p (degree-1 part) as signed integer in (-p^N/2, p^N/2]
    i64 to_signed() const {
        auto [a, b] = coords();
        (void)b;
        u64 m = ctx_->mod;
        return a > m / 2 ? static_cast<i64>(a) - static_cast<i64>(m) : static_cast<i64>(a);
    }

    std::string str() const;

private:
    static i64 sat_add(i64 a, i64 b) {
        if (a >= kInf || b >= kInf) return kInf;
        return a + b;
    }
    void shift_up(u64& a, u64& b, i64 k) const { ctx_->shift_coords(a, b, k); }
    void renormalize() {
        int k = ctx_->coord_val(a_, b_);
        if (k >= rel_) {
            i64 ab = v_ + rel_;
            zero_ = true;
            v_ = ab;
            a_ = b_ = 0;
            rel_ = 0;
            return;
        }
        if (k > 0) {
            ctx_->unshift_coords(a_, b_, k);
            v_ += k;
            rel_ -= k;
        }
    }
    void normalize(i64 absprec) {
        rel_ = static_cast<int>(std::min<i64>(absprec, ctx_->cap()));
        v_ = 0;
        renormalize();
    }

    Ctx ctx_;
    bool zero_ = true;
    i64 v_ = kInf;
    int rel_ = 0;
    u64 a_ = 0, b_ = 0;
};

inline std::string Padic::str() const {
    if (!ctx_) return "<null>";
    if (zero_) return v_ >= kInf ? std::string("0") : "O(pi^" + std::to_string(v_) + ")";
    std::string s = std::to_string(a_);
    if (ctx_->degree() == 2) s += "+" + std::to_string(b_) + "w";
    return "pi^" + std::to_string(v_) + "*(" + s + ")+O(pi^" + std::to_string(abs_prec()) + ")";
}

inline Padic teichmuller(const Ctx& c, i64 a) {
    u64 r = zn::reduce_signed(a, c->p);
    if (r == 0) throw Error(Err::NonUnit, "teichmuller of a multiple of p");
    u64 x = r;
    for (int i = 0; i < c->N + 1; ++i) x = zn::powmod(x, c->p, c->mod);
    return Padic::from_coords(c, x);
}

// canonical square root: first unit coordinate residue in [1, (p-1)/2] (else second)
inline Padic sqrt(const Padic& x) {
    const Ctx& c = x.ctx();
    if (x.is_zero()) throw Error(Err::NoRoot, "square root of an element indistinguishable from 0");
    i64 v = x.val_units();
    if (v % 2 != 0) throw Error(Err::NoRoot, "odd valuation");
    Padic u = x.mul_pi_pow(-v);
    u64 p = c->p;
    u64 ua = u.unit_a() % p, ub = u.unit_b() % p;
    bool found = false;
    u64 ya = 0, yb = 0;
    if (c->ext == ExtKind::Unramified) {
        u64 dd = c->d % p;
        for (u64 s = 0; s < p && !found; ++s)
            for (u64 t = 0; t < p && !found; ++t) {
                u64 ra = (s * s + t * t % p * dd) % p, rb = 2 * s * t % p;
                if (ra == ua && rb == ub && (s || t)) {
                    ya = s;
                    yb = t;
                    found = true;
                }
            }
    } else {
        for (u64 s = 1; s < p && !found; ++s)
            if (s * s % p == ua) {
                ya = s;
                found = true;
            }
    }
    if (!found) throw Error(Err::NoRoot, "not a square in the declared ring");
    Padic y = Padic::from_coords(c, ya, yb);
    Padic half = Padic::from_rational(c, 1, 2);
    for (int it = 0; it < 80; ++it) {
        Padic ny = (y + u / y) * half;
        if ((ny - y).is_zero() && it > 2) {
            y = ny;
            break;
        }
        y = ny;
    }
    y = y.with_abs(u.abs_prec());
    u64 fa = y.unit_a() % p, fb = y.unit_b() % p;
    u64 key = fa != 0 ? fa : fb;
    if (key > (p - 1) / 2) y = -y;
    return y.mul_pi_pow(v / 2);
}

} // namespace iwlog

#endif
