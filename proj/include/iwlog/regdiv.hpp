#ifndef IWLOG_REGDIV_HPP
#define IWLOG_REGDIV_HPP

#include <map>
#include <mutex>
#include <unordered_map>

#include "linalg.hpp"

namespace iwlog {

// exponent tuples of total degree < M in nvars variables, ordered by degree then lexicographically
class MonomialBasis {
public:
    MonomialBasis(int nvars, int M) : nvars_(nvars), M_(M) {
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        for (int d = 0; d < M; ++d) gen(0, d, e);
        for (std::size_t i = 0; i < mons_.size(); ++i) index_[key(mons_[i])] = i;
    }
    int nvars() const { return nvars_; }
    int cap() const { return M_; }
    std::size_t size() const { return mons_.size(); }
    const std::vector<int>& mon(std::size_t i) const { return mons_[i]; }
    int degree(std::size_t i) const { return deg_[i]; }
    std::optional<std::size_t> find(const std::vector<int>& e) const {
        int d = 0;
        for (int x : e) d += x;
        if (d >= M_) return std::nullopt;
        auto it = index_.find(key(e));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    void gen(int v, int left, std::vector<int>& e) {
        if (v == nvars_ - 1) {
            e[static_cast<std::size_t>(v)] = left;
            mons_.push_back(e);
            int d = 0;
            for (int x : e) d += x;
            deg_.push_back(d);
            e[static_cast<std::size_t>(v)] = 0;
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[static_cast<std::size_t>(v)] = x;
            gen(v + 1, left - x, e);
        }
        e[static_cast<std::size_t>(v)] = 0;
    }
    u64 key(const std::vector<int>& e) const {
        u64 k = 0;
        for (int x : e) k = k * static_cast<u64>(M_ + 1) + static_cast<u64>(x);
        return k;
    }

    int nvars_, M_;
    std::vector<std::vector<int>> mons_;
    std::vector<int> deg_;
    std::unordered_map<u64, std::size_t> index_;
};

using MonomialBasisPtr = std::shared_ptr<const MonomialBasis>;

inline MonomialBasisPtr monomial_basis(int nvars, int M) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, MonomialBasisPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, M}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(nvars, M);
    return slot;
}

// truncated power series in x_0..x_{nvars-1} modulo total degree M
class MSeries {
public:
    MSeries() = default;
    MSeries(Ctx c, int nvars, int M) : ctx_(std::move(c)), B_(monomial_basis(nvars, M)) { c_.assign(B_->size(), Padic::zero(ctx_)); }

    static MSeries constant(const Ctx& c, int nvars, int M, const Padic& a) {
        MSeries r(c, nvars, M);
        if (M > 0) r.c_[0] = a;
        return r;
    }
    static MSeries var(const Ctx& c, int nvars, int M, int i) {
        MSeries r(c, nvars, M);
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(i)] = 1;
        if (auto k = r.B_->find(e)) r.c_[*k] = Padic::one(c);
        return r;
    }

    const Ctx& ctx() const { return ctx_; }
    int nvars() const { return B_->nvars(); }
    int deg_cap() const { return B_->cap(); }
    const MonomialBasis& basis() const { return *B_; }
    const PVec& coeffs() const { return c_; }
    PVec& coeffs() { return c_; }

    Padic coeff(const std::vector<int>& e) const {
        auto k = B_->find(e);
        return k ? c_[*k] : Padic::zero(ctx_);
    }
    void set(const std::vector<int>& e, const Padic& a) {
        auto k = B_->find(e);
        if (k) c_[*k] = a;
    }

    friend MSeries operator+(const MSeries& a, const MSeries& b) {
        MSeries r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend MSeries operator-(const MSeries& a, const MSeries& b) {
        MSeries r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend MSeries operator*(const MSeries& a, const MSeries& b) {
        MSeries r(a.ctx_, a.nvars(), a.deg_cap());
        const auto& B = *a.B_;
        std::vector<int> e(static_cast<std::size_t>(B.nvars()));
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (a.c_[i].is_exact_zero()) continue;
            for (std::size_t j = 0; j < B.size() && B.degree(i) + B.degree(j) < B.cap(); ++j) {
                if (b.c_[j].is_exact_zero()) continue;
                for (std::size_t v = 0; v < e.size(); ++v) e[v] = B.mon(i)[v] + B.mon(j)[v];
                r.c_[*B.find(e)] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    MSeries operator*(const Padic& s) const {
        MSeries r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    // minimal coefficient valuation (the varpi-content)
    i64 content() const {
        i64 m = Padic::kInf;
        for (const auto& x : c_)
            if (!x.is_zero()) m = std::min(m, x.val_units());
        return m;
    }
    // lowest total degree carrying a nonzero coefficient
    int order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return B_->degree(i);
        return B_->cap();
    }

private:
    Ctx ctx_;
    MonomialBasisPtr B_;
    PVec c_;
};

// x_0 = a, result in x_1..x_{d}; coefficients carry the truncation error a^{M - deg}
inline MSeries specialize(const MSeries& F, const Padic& a) {
    const Ctx& c = F.ctx();
    if (F.nvars() < 1) throw Error(Err::BadInput, "no variable to specialize");
    i64 va = a.is_zero() ? Padic::kInf : a.val_units();
    if (va < c->e) throw Error(Err::BadInput, "specialization point must lie in the maximal ideal");
    int M = F.deg_cap();
    int nv = std::max(F.nvars() - 1, 1);
    MSeries r(c, nv, M);
    const auto& B = F.basis();
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (F.coeffs()[i].is_exact_zero()) continue;
        const auto& e = B.mon(i);
        std::vector<int> rest(e.begin() + 1, e.end());
        if (rest.empty()) rest.push_back(0);
        auto k = r.basis().find(rest);
        if (!k) continue;
        r.coeffs()[*k] += F.coeffs()[i] * a.pow(e[0]);
    }
    if (va < Padic::kInf && F.nvars() >= 1)
        for (std::size_t i = 0; i < r.basis().size(); ++i) {
            i64 missing = static_cast<i64>(M - r.basis().degree(i)) * va;
            if (F.nvars() == 1 && i > 0) continue;
            r.coeffs()[i] = r.coeffs()[i].with_abs(missing);
        }
    return r;
}

struct DivResult {
    std::optional<MSeries> H;
    int window = 0;            // G = F H holds in total degrees < window
    int obstructed_degree = -1;
    i64 prec = 0;              // minimal absolute precision of H's coefficients
};

namespace detail {

inline std::optional<PVec> solve_graded(const MSeries& F, const MSeries& G, int eq_deg, int unk_deg) {
    const auto& B = F.basis();
    const Ctx& c = F.ctx();
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (B.degree(i) < eq_deg) rows.push_back(i);
        if (B.degree(i) < unk_deg) cols.push_back(i);
    }
    PMat A(rows.size(), PVec(cols.size(), Padic::zero(c)));
    PVec b(rows.size());
    std::vector<int> diff(static_cast<std::size_t>(B.nvars()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        b[r] = G.coeffs()[rows[r]];
        for (std::size_t k = 0; k < cols.size(); ++k) {
            bool ok = true;
            for (std::size_t v = 0; v < diff.size(); ++v) {
                diff[v] = B.mon(rows[r])[v] - B.mon(cols[k])[v];
                if (diff[v] < 0) ok = false;
            }
            if (!ok) continue;
            if (auto f = B.find(diff)) A[r][k] = F.coeffs()[*f];
        }
    }
    auto sol = solve_integral(A, b);
    if (!sol) return std::nullopt;
    PVec h(B.size(), Padic::zero(c));
    for (std::size_t k = 0; k < cols.size(); ++k) h[cols[k]] = (*sol)[k];
    return h;
}

} // namespace detail

// integral H with G = F H modulo total degree M, by graded linear solving
inline DivResult divides_trunc(const MSeries& F, const MSeries& G) {
    if (F.is_zero()) throw Error(Err::NotDivisible, "divisor indistinguishable from 0");
    int M = F.deg_cap();
    int o = F.order();
    DivResult res;
    int unk = M - o;
    auto h = detail::solve_graded(F, G, M, unk);
    if (h) {
        MSeries H(F.ctx(), F.nvars(), M);
        H.coeffs() = *h;
        res.H = H;
        res.window = M;
        res.prec = Padic::kInf;
        for (const auto& x : *h) res.prec = std::min(res.prec, x.abs_prec());
        return res;
    }
    // largest consistent window
    int w = M - 1;
    while (w > 0 && !detail::solve_graded(F, G, w, std::min(unk, w))) --w;
    res.window = w;
    res.obstructed_degree = w;
    return res;
}

struct SpecFamily {
    PVec points;
};

struct ChevalleyReport {
    bool a_content = false;    // varpi divides neither F nor G
    bool b_x0 = false;         // x_0 does not divide F
    std::vector<bool> c_points;
    bool c_all = false;
    int first_failure = -1;
    bool direct_attempted = false;
    bool direct_ok = false;
    bool all_pass() const { return a_content && b_x0 && c_all; }
};

inline void check_family(const SpecFamily& fam) {
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        const Padic& a = fam.points[i];
        if (!a.is_zero() && a.val_units() < a.ctx()->e) throw Error(Err::BadInput, "specialization point must lie in the maximal ideal");
        for (std::size_t j = 0; j < i; ++j)
            if ((a - fam.points[j]).is_zero()) throw Error(Err::BadInput, "specialization points must be distinct");
    }
}

inline ChevalleyReport chevalley_check(const MSeries& F, const MSeries& G, const SpecFamily& fam) {
    if (fam.points.empty()) throw Error(Err::BadInput, "empty specialization family");
    check_family(fam);
    ChevalleyReport r;
    r.a_content = F.content() == 0 && G.content() == 0;
    MSeries F0 = specialize(F, Padic::zero(F.ctx()));
    r.b_x0 = !F0.is_zero();
    r.c_all = true;
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        MSeries Fa = specialize(F, fam.points[i]);
        MSeries Ga = specialize(G, fam.points[i]);
        bool ok;
        if (Fa.is_zero()) ok = Ga.is_zero();
        else ok = divides_trunc(Fa, Ga).H.has_value();
        r.c_points.push_back(ok);
        if (!ok && r.first_failure < 0) r.first_failure = static_cast<int>(i);
        r.c_all = r.c_all && ok;
    }
    if (r.all_pass()) {
        r.direct_attempted = true;
        r.direct_ok = divides_trunc(F, G).H.has_value();
    }
    return r;
}

// prod_{i<n} (x_0 - a_i) in one variable, truncated at degree M
inline MSeries family_product(const Ctx& c, const SpecFamily& fam, std::size_t n, int M) {
    MSeries r = MSeries::constant(c, 1, M, Padic::one(c));
    MSeries x = MSeries::var(c, 1, M, 0);
    for (std::size_t i = 0; i < n && i < fam.points.size(); ++i) r = r * (x - MSeries::constant(c, 1, M, fam.points[i]));
    return r;
}

} // namespace iwlog

#endif
