#ifndef IWLOG_LINALG_HPP
#define IWLOG_LINALG_HPP

#include "padic.hpp"

namespace iwlog {

using PVec = std::vector<Padic>;
using PMat = std::vector<PVec>;

struct SolveResult {
    PVec x;
    int rank = 0;
    bool consistent = true;
};

// Gaussian elimination over the fraction field; pivots of minimal valuation.
// Free variables are set to zero. Rows reduced to zero must have zero right side at precision.
inline SolveResult solve_linear(PMat A, PVec b) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    const Ctx& c = b.empty() ? Ctx() : b[0].ctx();
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t best = m;
        i64 bv = Padic::kInf;
        for (std::size_t r = row; r < m; ++r)
            if (!A[r][col].is_zero() && A[r][col].val_units() < bv) {
                bv = A[r][col].val_units();
                best = r;
            }
        if (best == m) continue;
        std::swap(A[row], A[best]);
        std::swap(b[row], b[best]);
        Padic inv = A[row][col].recip();
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            Padic f = A[r][col] * inv;
            for (std::size_t k = col; k < n; ++k)
                if (!A[row][k].is_exact_zero()) A[r][k] -= f * A[row][k];
            A[r][col] = Padic::zero(c);
            b[r] -= f * b[row];
        }
        pivcol.push_back(col);
        ++row;
    }
    SolveResult res;
    res.rank = static_cast<int>(row);
    for (std::size_t r = row; r < m; ++r)
        if (!b[r].is_zero()) res.consistent = false;
    res.x.assign(n, Padic::zero(c));
    for (std::size_t i = 0; i < pivcol.size(); ++i) res.x[pivcol[i]] = b[i] / A[i][pivcol[i]];
    return res;
}

inline PMat mat_mul(const PMat& A, const PMat& B) {
    std::size_t m = A.size(), k = B.size(), n = k ? B[0].size() : 0;
    const Ctx& c = A[0][0].ctx();
    PMat C(m, PVec(n, Padic::zero(c)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (A[i][j].is_exact_zero()) continue;
            for (std::size_t l = 0; l < n; ++l) C[i][l] += A[i][j] * B[j][l];
        }
    return C;
}

// Integral solution of A x = b over the valuation ring, by full-pivot Smith-type elimination.
// Returns nullopt when no solution with integral coordinates exists at precision.
inline std::optional<PVec> solve_integral(PMat A, PVec b) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    const Ctx c = b.empty() ? Ctx() : b[0].ctx();
    PMat Q(n, PVec(n, Padic::zero(c)));
    for (std::size_t i = 0; i < n; ++i) Q[i][i] = Padic::one(c);
    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        std::size_t br = m, bc = n;
        i64 bv = Padic::kInf;
        for (std::size_t r = k; r < m; ++r)
            for (std::size_t cc = k; cc < n; ++cc)
                if (!A[r][cc].is_zero() && A[r][cc].val_units() < bv) {
                    bv = A[r][cc].val_units();
                    br = r;
                    bc = cc;
                }
        if (br == m) break;
        std::swap(A[k], A[br]);
        std::swap(b[k], b[br]);
        if (bc != k) {
            for (std::size_t r = 0; r < m; ++r) std::swap(A[r][k], A[r][bc]);
            for (std::size_t r = 0; r < n; ++r) std::swap(Q[r][k], Q[r][bc]);
        }
        Padic inv = A[k][k].recip();
        for (std::size_t r = k + 1; r < m; ++r) {
            if (A[r][k].is_zero()) continue;
            Padic f = A[r][k] * inv;
            for (std::size_t cc = k; cc < n; ++cc) A[r][cc] -= f * A[k][cc];
            A[r][k] = Padic::zero(c);
            b[r] -= f * b[k];
        }
        for (std::size_t cc = k + 1; cc < n; ++cc) {
            if (A[k][cc].is_zero()) continue;
            Padic f = A[k][cc] * inv;
            for (std::size_t r = 0; r < n; ++r) Q[r][cc] -= f * Q[r][k];
            A[k][cc] = Padic::zero(c);
        }
    }
    for (std::size_t r = k; r < m; ++r)
        if (!b[r].is_zero()) return std::nullopt;
    PVec y(n, Padic::zero(c));
    for (std::size_t i = 0; i < k; ++i) {
        y[i] = b[i] / A[i][i];
        if (!y[i].is_zero() && y[i].val_units() < 0) return std::nullopt;
    }
    PVec x(n, Padic::zero(c));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < k; ++i) x[r] += Q[r][i] * y[i];
    return x;
}

} // namespace iwlog

#endif
