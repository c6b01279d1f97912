#ifndef IWLOG_POLY_HPP
#define IWLOG_POLY_HPP

#include "linalg.hpp"

namespace iwlog {

namespace poly {

inline void trim(PVec& a) {
    while (!a.empty() && a.back().is_exact_zero()) a.pop_back();
}

inline PVec add(const PVec& a, const PVec& b) {
    PVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size()) r[i] = a[i] + b[i];
        else r[i] = i < a.size() ? a[i] : b[i];
    }
    return r;
}

inline PVec sub(const PVec& a, const PVec& b) {
    PVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size()) r[i] = a[i] - b[i];
        else r[i] = i < a.size() ? a[i] : -b[i];
    }
    return r;
}

inline PVec scale(const PVec& a, const Padic& s) {
    PVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

// product truncated to `limit` coefficients (limit < 0: full product)
inline PVec mul(const PVec& a, const PVec& b, long limit = -1) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size() + b.size() - 1;
    if (limit >= 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(limit));
    const Ctx& c = a[0].ctx();
    PVec r(n, Padic::zero(c));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (b[j].is_exact_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// long division over the fraction field; divisor's top coefficient must be nonzero
inline std::pair<PVec, PVec> divrem(PVec a, PVec b) {
    trim(b);
    if (b.empty()) throw Error(Err::NotDivisible, "division by zero polynomial");
    const Ctx& c = b[0].ctx();
    while (!b.empty() && b.back().is_zero()) b.pop_back();
    if (b.empty()) throw Error(Err::NotDivisible, "divisor indistinguishable from 0");
    trim(a);
    if (a.size() < b.size()) return {PVec{}, a};
    Padic lead = b.back().recip();
    std::size_t db = b.size() - 1;
    PVec q(a.size() - db, Padic::zero(c));
    for (std::size_t i = a.size(); i-- > db;) {
        Padic f = a[i] * lead;
        q[i - db] = f;
        if (f.is_exact_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
    }
    a.resize(db);
    return {q, a};
}

inline PVec rem(const PVec& a, const PVec& b) { return divrem(a, b).second; }

inline bool is_zero(const PVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

// a(c0 + c1 X)
inline PVec compose_linear(const PVec& a, const Padic& c0, const Padic& c1, long limit = -1) {
    if (a.empty()) return {};
    const Ctx& c = a[0].ctx();
    PVec acc;
    for (std::size_t i = a.size(); i-- > 0;) {
        PVec nxt(acc.size() + 1, Padic::zero(c));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            nxt[k] += acc[k] * c0;
            nxt[k + 1] += acc[k] * c1;
        }
        nxt[0] += a[i];
        if (limit >= 0 && nxt.size() > static_cast<std::size_t>(limit)) nxt.resize(static_cast<std::size_t>(limit));
        acc = std::move(nxt);
    }
    return acc;
}

inline PVec from_ints(const Ctx& c, const std::vector<i64>& v) {
    PVec r;
    r.reserve(v.size());
    for (i64 x : v) r.push_back(Padic::from_int(c, x));
    return r;
}

} // namespace poly

} // namespace iwlog

#endif
