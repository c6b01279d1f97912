#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "iwlog/checks.hpp"

using namespace iwlog;

namespace {

struct Opts {
    u64 p = 3;
    int prec = 20;
    int level = 3;
    int k = 0;
    int m = 1;
    i64 eps = 1;
    std::string sign = "plus";
    std::string input;
    std::string out;
    u64 seed = 1;
    int target = 10;
    long degcap = 400;
    i64 disc = -4;
    int power = 4;
    int nmax = 50;
    int weight = 2;
    int cyc = 3;
    int zeta = 1;
    int t = 0;
    int j = 0;
    std::string object = "halflog";
    std::string suite = "all";
    bool timing = false;
    bool sl2 = false;
    bool ext = false;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Err::BadInput, "cannot open " + path);
    return json::parse(in);
}

Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::Plus;
    if (s == "minus" || s == "-") return Sign::Minus;
    throw Error(Err::BadInput, "sign must be plus or minus");
}

IwaSeries random_poly(const Ctx& c, std::mt19937_64& rng, int deg) {
    PVec v;
    for (int i = 0; i < deg; ++i) v.push_back(Padic::from_int(c, checks::rnd_int(rng, -100, 100)));
    return IwaSeries::poly(c, v);
}

json cmd_halflog(const Opts& o) {
    auto c = make_ctx(o.p, o.prec);
    return to_json(halflog(c, parse_sign(o.sign), o.m, o.level));
}

json cmd_logmatrix(const Opts& o) {
    auto P = make_ap0_params(o.p, o.prec, o.k, o.eps);
    Ap0Options opt;
    opt.target = o.target;
    return to_json(log_matrix_ap0(P, o.level, opt));
}

json cmd_split(const Opts& o) {
    auto P = make_ap0_params(o.p, o.prec, o.k, o.eps);
    LogMatrix A = qinv_times(P, log_matrix_ap0(P, o.level));
    const Ctx& c = P.ext;
    json res;
    AlphaBetaPair ab;
    if (!o.input.empty()) {
        json in = read_json(o.input);
        ab = AlphaBetaPair{iwa_from_json(c, in.at("alpha")), iwa_from_json(c, in.at("beta")), o.level};
    } else {
        std::mt19937_64 rng(o.seed);
        int dp = static_cast<int>(signed_modulus(c, Sign::Plus, o.level, o.k + 1).degree());
        int dm = static_cast<int>(signed_modulus(c, Sign::Minus, o.level, o.k + 1).degree());
        SignedPair s{random_poly(c, rng, dp), random_poly(c, rng, dm), o.level, 0};
        ab = forward(s, A);
        res["input"] = to_json(ab, o.k);
    }
    res["split"] = to_json(signed_split(ab, A, o.level), o.k);
    return res;
}

json cmd_antisym(const Opts& o) {
    auto P = make_ap0_params(o.p, o.prec, o.k, o.eps);
    const Ctx& c = P.ext;
    LogMatrix S = qinv_times(P, log_matrix_ap0_series(P, o.level, o.degcap));
    WeierstrassDivisor W(det2(S));
    json res;
    IwaSeries L;
    if (!o.input.empty()) {
        L = iwa_from_json(c, read_json(o.input).at("L"));
    } else {
        std::mt19937_64 rng(o.seed);
        IwaSeries G = random_poly(c, rng, 8);
        res["G"] = to_json(G);
        L = det2(S) * G;
    }
    res["lambda"] = W.lambda();
    res["result"] = to_json(antisym_factor(L, W));
    return res;
}

json report_json(const ChevalleyReport& r) {
    std::vector<bool> pts = r.c_points;
    return json{{"a_content", r.a_content}, {"b_x0", r.b_x0}, {"c_points", pts}, {"c_all", r.c_all}, {"first_failure", r.first_failure},
                {"direct_attempted", r.direct_attempted}, {"direct_ok", r.direct_ok}, {"all_pass", r.all_pass()}};
}

json cmd_regdiv(const Opts& o) {
    auto c = make_ctx(o.p, o.prec);
    if (o.input.empty()) throw Error(Err::BadInput, "regdiv needs --input {\"F\":..., \"G\":..., \"points\":[...]}");
    json in = read_json(o.input);
    int nv = in.value("nvars", 2), M = in.value("deg_cap", 6);
    MSeries F = mseries_from_json(c, nv, M, in.at("F")), G = mseries_from_json(c, nv, M, in.at("G"));
    SpecFamily fam;
    for (const auto& x : in.at("points")) fam.points.push_back(padic_from_json(c, x));
    auto rep = chevalley_check(F, G, fam);
    json res{{"report", report_json(rep)}};
    auto d = divides_trunc(F, G);
    res["division"] = json{{"divides", d.H.has_value()}, {"window", d.window}, {"obstructed_degree", d.obstructed_degree}};
    if (d.H) res["division"]["H"] = to_json(*d.H);
    return res;
}

json group_json(const Group& G) {
    auto ds = derived_series_orders(G);
    return json{{"order", G.order()}, {"derived_series", ds}, {"solvable", ds.back() == 1}, {"abelian", is_abelian(G)}};
}

json cmd_galimg(const Opts& o) {
    Fq F = o.ext ? Fq::quadratic(o.p) : Fq::prime(o.p);
    json res;
    if (o.input.empty() || o.sl2) {
        res["group"] = group_json(closure(sl2_gens(F)));
        return res;
    }
    json in = read_json(o.input);
    if (in.contains("pairs")) {
        std::vector<std::pair<FMat, FMat>> pairs;
        for (const auto& pr : in["pairs"]) pairs.push_back({fmat_from_json(F, pr.at(0)), fmat_from_json(F, pr.at(1))});
        auto v = goursat_product_check(F, pairs);
        res["goursat"] = json{{"order_h", v.order_h}, {"order_1", v.order_1}, {"order_2", v.order_2}, {"full_product", v.full_product},
                              {"pr2_solvable", v.pr2_solvable}, {"pr1_is_sl2", v.pr1_is_sl2}};
        return res;
    }
    MatGroupGen g{F, 0, {}};
    for (const auto& m : in.at("gens")) g.gens.push_back(fmat_from_json(F, m));
    if (g.gens.empty()) throw Error(Err::BadInput, "no generators");
    g.dim = g.gens[0].n;
    Group G = closure(g);
    res["group"] = group_json(G);
    if (g.dim == 2) res["group"]["abelian_index_2"] = has_abelian_index2(G);
    if (g.dim == 4) {
        auto t = find_tau(g);
        res["tau"] = t ? to_json(*t) : json(nullptr);
    }
    return res;
}

ImagQuadCtx quad_ctx(const Opts& o) {
    ImagQuadCtx K;
    K.D = o.disc;
    K.t = o.power;
    check_units(K);
    return K;
}

json cmd_theta(const Opts& o) { return to_json(theta_series(quad_ctx(o), o.nmax)); }

json cmd_eis(const Opts& o) { return to_json(eisenstein_depleted(o.weight, o.cyc, o.zeta, o.p, o.nmax)); }

json cmd_deplete(const Opts& o) { return to_json(deplete(theta_series(quad_ctx(o), o.nmax), o.p)); }

json cmd_eval(const Opts& o) {
    auto c = make_ctx(o.p, o.prec);
    IwaSeries F;
    if (!o.input.empty()) F = iwa_from_json(c, read_json(o.input));
    else if (o.object == "halflog") F = halflog(c, parse_sign(o.sign), o.m, o.level);
    else if (o.object == "log") F = log_tw(c, o.m, o.level);
    else if (o.object == "omega") F = omega_tw(c, o.level, o.m);
    else if (o.object == "delta") F = delta(c, o.m);
    else throw Error(Err::BadInput, "unknown object " + o.object);
    return json{{"point", to_json(CharPoint{o.t, o.j})}, {"value", to_json(eval_at(F, {o.t, o.j}))}};
}

int emit(const json& j, const std::string& out) {
    std::string s = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << s;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
        f << s;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"iwlog: Iwasawa-theoretic logarithmic matrices and signed splittings"};
    app.require_subcommand(1);
    Opts o;
    auto common = [&](CLI::App* s) {
        s->add_option("--p", o.p, "prime");
        s->add_option("--prec", o.prec, "p-adic precision N");
        s->add_option("--out", o.out, "write the report to a file");
        s->add_option("--seed", o.seed, "seed for randomized inputs");
    };
    auto crystal = [&](CLI::App* s) {
        s->add_option("--k", o.k, "weight parameter k");
        s->add_option("--eps", o.eps, "nebentype value eps(p)");
        s->add_option("--level", o.level, "level n");
    };
    auto quad = [&](CLI::App* s) {
        s->add_option("--disc", o.disc, "fundamental discriminant D < 0");
        s->add_option("--power", o.power, "infinity-type exponent");
        s->add_option("--nmax", o.nmax, "number of coefficients");
    };

    std::map<std::string, std::function<json(const Opts&)>> run;

    auto* s = app.add_subcommand("halflog", "signed half-logarithm");
    common(s);
    s->add_option("--m", o.m, "twist count m");
    s->add_option("--sign", o.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    s->add_option("--level", o.level, "level n");
    run["halflog"] = cmd_halflog;

    s = app.add_subcommand("logmatrix", "logarithmic matrix for a_p = 0");
    common(s);
    crystal(s);
    s->add_option("--target", o.target, "p-adic digits wanted on the entries");
    run["logmatrix"] = cmd_logmatrix;

    s = app.add_subcommand("split", "signed splitting of an (alpha, beta) pair");
    common(s);
    crystal(s);
    s->add_option("--input", o.input, "JSON {\"alpha\":..., \"beta\":...}");
    run["split"] = cmd_split;

    s = app.add_subcommand("antisym", "divide an antisymmetric pairing value by the determinant");
    common(s);
    crystal(s);
    s->add_option("--degcap", o.degcap, "X-adic truncation of the matrix entries");
    s->add_option("--input", o.input, "JSON {\"L\": IwaSeries}");
    run["antisym"] = cmd_antisym;

    s = app.add_subcommand("regdiv", "divisibility checker in truncated power-series rings");
    common(s);
    s->add_option("--input", o.input, "JSON {\"F\":..., \"G\":..., \"points\":[...]}")->required();
    run["regdiv"] = cmd_regdiv;

    s = app.add_subcommand("galimg", "finite matrix group closure, Goursat and tau certificates");
    common(s);
    s->add_option("--input", o.input, "JSON {\"gens\":[...]} or {\"pairs\":[[A,B],...]}");
    s->add_flag("--sl2", o.sl2, "use the standard generators of SL_2");
    s->add_flag("--ext", o.ext, "work over F_{p^2}");
    run["galimg"] = cmd_galimg;

    s = app.add_subcommand("theta", "theta series of a Hecke character");
    common(s);
    quad(s);
    run["theta"] = cmd_theta;

    s = app.add_subcommand("eis", "p-depleted Eisenstein series");
    common(s);
    s->add_option("--weight", o.weight, "weight k");
    s->add_option("--M", o.cyc, "root-of-unity order");
    s->add_option("--zeta", o.zeta, "exponent of the chosen root of unity");
    s->add_option("--nmax", o.nmax, "number of coefficients");
    run["eis"] = cmd_eis;

    s = app.add_subcommand("deplete", "p-depleted theta series");
    common(s);
    quad(s);
    run["deplete"] = cmd_deplete;

    s = app.add_subcommand("eval", "evaluate a series at a character point");
    common(s);
    s->add_option("--object", o.object, "halflog, log, omega or delta")->check(CLI::IsMember({"halflog", "log", "omega", "delta"}));
    s->add_option("--input", o.input, "IwaSeries JSON instead of --object");
    s->add_option("--m", o.m, "twist count m");
    s->add_option("--sign", o.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    s->add_option("--level", o.level, "level n");
    s->add_option("--t", o.t, "root of unity of order p^t");
    s->add_option("--j", o.j, "cyclotomic twist j");

    run["eval"] = cmd_eval;

    s = app.add_subcommand("check", "run an acceptance suite");
    std::vector<std::string> names{"all"};
    for (const auto& e : suites()) names.push_back(e.name);
    s->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(names));
    s->add_option("--seed", o.seed, "seed for randomized suites (0 = default)");
    s->add_option("--out", o.out, "write the report to a file");
    s->add_flag("--timing", o.timing, "include runtimes in the report");

    try {
        o.seed = 0;
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (o.seed == 0 && app.got_subcommand("check") == false) o.seed = 1;

    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    try {
        if (name == "check") {
            json rep = json::array();
            bool ok = true;
            for (const auto& e : suites()) {
                if (o.suite != "all" && o.suite != e.name) continue;
                SuiteResult r = e.run(o.seed);
                ok = ok && r.pass;
                rep.push_back(r.to_json(o.timing));
            }
            int rc = emit(json{{"pass", ok}, {"suites", rep}}, o.out);
            return rc ? rc : (ok ? 0 : 1);
        }
        return emit(run.at(name)(o), o.out);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        emit(json{{"error", err_name(e.kind)}, {"message", e.what()}}, o.out);
        return e.kind == Err::BadInput ? 2 : 1;
    } catch (const json::exception& e) {
        std::cerr << "bad JSON input: " << e.what() << "\n";
        return 2;
    }
}
