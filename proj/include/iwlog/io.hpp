#ifndef IWLOG_IO_HPP
#define IWLOG_IO_HPP

#include <json.hpp>

#include "cycser.hpp"
#include "galimg.hpp"
#include "qexp.hpp"
#include "regdiv.hpp"
#include "split.hpp"

namespace iwlog {

using json = nlohmann::ordered_json;

inline json ext_json(const Ctx& c) {
    switch (c->ext) {
    case ExtKind::None: return nullptr;
    case ExtKind::Unramified: return json{{"kind", "unramified"}, {"d", c->d}};
    case ExtKind::Ramified: return json{{"kind", "ramified"}, {"c", c->unit_c}};
    }
    return nullptr;
}

// coords are residues of the value (of pi^-shift times the value when it is not integral)
inline json to_json(const Padic& x) {
    const Ctx& c = x.ctx();
    json j;
    j["p"] = c->p;
    i64 ab = x.abs_prec();
    j["prec"] = ab >= Padic::kInf ? json(nullptr) : json(ab);
    i64 shift = !x.is_zero() && x.val_units() < 0 ? x.val_units() : 0;
    Padic y = shift ? x.mul_pi_pow(-shift) : x;
    auto [a, b] = y.is_zero() ? std::pair<u64, u64>{0, 0} : y.coords();
    j["coords"] = c->degree() == 1 ? json::array({std::to_string(a)}) : json::array({std::to_string(a), std::to_string(b)});
    if (shift) j["shift"] = shift;
    j["ext"] = ext_json(c);
    return j;
}

inline json to_json(const PVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json to_json(const IwaSeries& F) {
    json j;
    j["var"] = "X";
    j["growth"] = F.growth().str();
    j["deg_cap"] = F.is_poly() ? json(nullptr) : json(F.deg_cap());
    j["coeffs"] = to_json(F.coeffs());
    return j;
}

inline json to_json(const PiSeries& F) {
    return json{{"var", "pi"}, {"deg_cap", F.deg_cap()}, {"coeffs", to_json(F.coeffs())}};
}

inline json to_json(const FiniteGroupRingElt& l) {
    json m = json::object();
    for (u64 a : l.support_indices())
        if (!l[static_cast<i64>(a)].is_exact_zero()) m[std::to_string(a)] = to_json(l[static_cast<i64>(a)]);
    return json{{"level", l.level()}, {"terms", m}};
}

inline json to_json(CharPoint pt) { return json{{"t", pt.t}, {"j", pt.j}}; }

inline json to_json(const CycloElt& v) {
    return json{{"t", v.ring->t()}, {"val", v.val().str()}, {"coeffs", to_json(v.b)}};
}

inline json to_json(const LogMatrix& M) {
    json e = json::array();
    for (const auto& row : M.e) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        e.push_back(r);
    }
    json j{{"dim", M.dim}, {"level", M.level}, {"k", M.k}, {"provenance", M.provenance}};
    if (M.depth >= 0) j["depth"] = M.depth;
    if (M.certified_prec >= 0) j["certified_prec"] = M.certified_prec;
    j["entries"] = e;
    return j;
}

inline json to_json(const SignedPair& s, int k) {
    return json{{"plus", to_json(s.plus)}, {"minus", to_json(s.minus)}, {"level", s.level}, {"k", k}, {"denom_exp", s.denom_exp}};
}

inline json to_json(const AlphaBetaPair& s, int k) {
    return json{{"alpha", to_json(s.alpha)}, {"beta", to_json(s.beta)}, {"level", s.level}, {"k", k}, {"denom_exp", 0}};
}

inline json to_json(const MSeries& F) {
    json m = json::object();
    const auto& B = F.basis();
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (F.coeffs()[i].is_exact_zero()) continue;
        std::string key;
        for (int v = 0; v < B.nvars(); ++v) key += (v ? "," : "") + std::to_string(B.mon(i)[static_cast<std::size_t>(v)]);
        m[key] = to_json(F.coeffs()[i]);
    }
    return json{{"nvars", F.nvars()}, {"deg_cap", F.deg_cap()}, {"coeffs", m}};
}

inline json to_json(const FMat& A) {
    json r = json::array();
    for (int i = 0; i < A.n; ++i) {
        json row = json::array();
        for (int j = 0; j < A.n; ++j) row.push_back(A.a[static_cast<std::size_t>(i * A.n + j)]);
        r.push_back(row);
    }
    return r;
}

inline json to_json(const KCyc& c, bool rational) {
    if (rational) return c.re.empty() ? 0 : c.re[0];
    return json{{"re", c.re}, {"im", c.im}};
}

inline json to_json(const QExpansion& q) {
    bool rat = q.rational();
    json a = json::array();
    for (const auto& c : q.coeffs) a.push_back(to_json(c, rat));
    return json{{"ring", q.ring}, {"nmax", q.nmax()}, {"coeffs", a}};
}

inline json to_json(const TauCertificate& c) {
    json j;
    j["tau"] = to_json(c.tau);
    j["min_poly"] = c.min_poly;
    j["rank_minus_one"] = c.rank_minus_one;
    j["quotient_dim"] = c.quotient_dim;
    j["jordan_one"] = c.jordan_one;
    j["jordan_minus_one"] = c.jordan_minus_one;
    return j;
}

// ---------------------------------------------------------------------------
// input

// integer, decimal string, or the object form written by to_json
inline Padic padic_from_json(const Ctx& c, const json& j) {
    if (j.is_number_integer()) return Padic::from_int(c, j.get<i64>());
    if (j.is_string()) return Padic::from_int(c, std::stoll(j.get<std::string>()));
    if (!j.is_object() || !j.contains("coords")) throw Error(Err::BadInput, "cannot read a p-adic value from " + j.dump());
    const auto& co = j["coords"];
    u64 a = std::stoull(co.at(0).get<std::string>());
    u64 b = co.size() > 1 ? std::stoull(co.at(1).get<std::string>()) : 0;
    i64 prec = j.contains("prec") && !j["prec"].is_null() ? j["prec"].get<i64>() : Padic::kInf;
    i64 shift = j.value("shift", static_cast<i64>(0));
    Padic x = Padic::from_coords(c, a % c->mod, b % c->mod, prec >= Padic::kInf ? prec : prec - shift);
    return shift ? x.mul_pi_pow(shift) : x;
}

inline IwaSeries iwa_from_json(const Ctx& c, const json& j) {
    const json& co = j.is_array() ? j : j.at("coeffs");
    PVec v;
    for (const auto& x : co) v.push_back(padic_from_json(c, x));
    long cap = j.is_object() && j.contains("deg_cap") && !j["deg_cap"].is_null() ? j["deg_cap"].get<long>() : -1;
    return IwaSeries(c, v, cap);
}

// {"e0,e1,...": value}
inline MSeries mseries_from_json(const Ctx& c, int nvars, int M, const json& j) {
    MSeries F(c, nvars, M);
    const json& co = j.contains("coeffs") ? j["coeffs"] : j;
    for (auto it = co.begin(); it != co.end(); ++it) {
        std::vector<int> e;
        std::string k = it.key();
        std::size_t pos = 0;
        while (pos <= k.size()) {
            std::size_t q = k.find(',', pos);
            if (q == std::string::npos) q = k.size();
            e.push_back(std::stoi(k.substr(pos, q - pos)));
            pos = q + 1;
        }
        if (static_cast<int>(e.size()) != nvars) throw Error(Err::BadInput, "exponent tuple " + k + " has the wrong length");
        F.set(e, padic_from_json(c, it.value()));
    }
    return F;
}

inline FMat fmat_from_json(const Fq& F, const json& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<i64> flat;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw Error(Err::BadInput, "matrix must be square");
        for (const auto& x : r) flat.push_back(x.get<i64>());
    }
    return fmat_from(F, n, flat);
}

} // namespace iwlog

#endif
