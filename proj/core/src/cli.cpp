#include "normgeom/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "normgeom/json_io.hpp"

namespace normgeom::cli {

namespace {

struct Options {
    std::string input;
    std::string infile;
    std::string place = "padic:2";
    bool place_explicit = false;
    std::string format = "json";
    double tol = 1e-9;
    long seed = 0;
    std::string sweep;
    int jobs = 1;
};

json load_input(const Options& opt) {
    std::string text = opt.input;
    if (text.empty() && !opt.infile.empty()) {
        std::ifstream in(opt.infile);
        if (!in) throw InputError("cannot open input file: " + opt.infile);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (text.empty()) throw InputError("no input given (use --input or --in)");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("bad json: ") + e.what());
    }
}

Place pick_place(const Options& opt, const json& in) {
    if (in.is_object() && in.contains("place")) return place_from_json(in["place"]);
    return place_from_flag(opt.place);
}

template <class F>
auto with_ctx(const Place& v, F&& f) {
    return std::visit(std::forward<F>(f), ctx_for(v));
}

template <class Ctx>
json value_to_json(const typename Ctx::W& w) {
    return weight_to_json<Ctx>(w);
}

// ---------------------------------------------------------------------------
// Registered sequence families (non-archimedean places).

template <class Ctx>
typename Ctx::K uniformizer_pow(const Ctx& ctx, long e) {
    return IwasawaTriple<Ctx>::uniformizer_power(ctx, e);
}

// mu_{y,x}(a e1 + b e2) = max(|a - x b|, y |b|)
template <class Ctx>
NormRep<Ctx> family_muyx(const Ctx& ctx, const PosReal& y, const typename Ctx::K& x) {
    using K = typename Ctx::K;
    Mat<K> g = Mat<K>::identity(2, ctx.k_model());
    g.at(0, 1) = x;
    return NormRep<Ctx>{ctx, std::move(g), {PosReal::one(), y}};
}

// (mu_y o g_x)(a,b,c) = max(|a|, y|b + x c|, y^2 |c|)
template <class Ctx>
NormRep<Ctx> family_muygx(const Ctx& ctx, const PosReal& y, const typename Ctx::K& x) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    Mat<K> b = Mat<K>::identity(3, ctx.k_model());
    b.at(1, 2) = F::neg(x);  // g_x^{-1}
    return NormRep<Ctx>{ctx, std::move(b), {PosReal::one(), y, y.mul(y)}};
}

// mu_{x,eps}(a,b,c) = max(|a|, |b|, eps^{-1} |c + b x|)
template <class Ctx>
NormRep<Ctx> family_muxeps(const Ctx& ctx, const typename Ctx::K& x, const PosReal& eps) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    Mat<K> b = Mat<K>::identity(3, ctx.k_model());
    b.at(2, 1) = F::neg(x);  // columns e1, e2 - x e3, e3
    return NormRep<Ctx>{ctx, std::move(b), {PosReal::one(), PosReal::one(), eps.inv()}};
}

template <class Ctx>
BoundaryPoint<Ctx> full_flag_point(const Ctx& ctx, int d) {
    BoundaryPoint<Ctx> bp;
    bp.flag.ambient = d;
    for (int i = 1; i < d; ++i)
        bp.flag.steps.push_back(Subspace<typename Ctx::F>::leading(d, i, ctx.f_model()));
    for (int i = 0; i < d; ++i) bp.graded.push_back(NormRep<Ctx>::standard(ctx, 1));
    return bp;
}

template <class Ctx>
NormRep<Ctx> dual_seminorm(const Ctx& ctx, std::vector<typename Ctx::W> weights) {
    NormRep<Ctx> rep;
    rep.ctx = ctx;
    rep.basis = Mat<typename Ctx::K>::identity(static_cast<int>(weights.size()), ctx.k_model());
    rep.weights = std::move(weights);
    return rep;
}

template <class Ctx>
    requires(!Ctx::archimedean)
json example_bssa(const Ctx& ctx, int n_terms, double tol, std::string* csv) {
    const long q = ctx.p;
    std::vector<NormRep<Ctx>> seq;
    std::vector<std::array<double, 3>> rows;
    bool eventually_outside = true;
    for (int n = 1; n <= n_terms; ++n) {
        PosReal y = PosReal::prime_power(Int(q), Rat(n));
        auto x = uniformizer_pow(ctx, -2 * n);  // |x| = q^{2n}
        seq.push_back(family_muyx(ctx, y, x));
        double t = y.inv().to_double();
        double bound = PosReal::prime_power(Int(q), Rat(-2 * n)).to_double();  // |x|^{-1}
        if (t < bound) eventually_outside = false;
        rows.push_back({static_cast<double>(n), t, bound});
    }
    Verdict sat = satake_limit_check(seq, full_flag_point(ctx, 2), tol);
    sat.trace_header = {"n", "t", "bs_bound"};
    sat.trace.clear();
    for (auto& r : rows) sat.trace.push_back({r[0], r[1], r[2]});
    json out;
    out["satake_converges"] = sat.converges;
    out["eventually_outside_bs_neighborhood"] = eventually_outside;
    out["note"] = "the set t < |x|^{-1} is a Borel-Serre neighborhood of the limit but not a Satake one";
    if (csv) *csv = verdict_trace_csv(sat);
    return out;
}

template <class Ctx>
    requires(!Ctx::archimedean)
json example_bssb(const Ctx& ctx, int n_terms, double tol, std::string* csv) {
    const long q = ctx.p;
    std::vector<NormRep<Ctx>> fam1, fam2;
    for (int n = 1; n <= n_terms; ++n) {
        fam1.push_back(family_muyx(ctx, PosReal::prime_power(Int(q), Rat(n)), uniformizer_pow(ctx, n % 3)));
        fam2.push_back(family_muyx(ctx, PosReal::one(), uniformizer_pow(ctx, -n)));
    }
    auto nu = dual_seminorm(ctx, {PosReal::one(), PosReal::zero()});  // (a,b) -> |a|
    auto alpha = full_flag_point(ctx, 2);

    Verdict f1_weak = weak_limit_check(fam1, nu, {}, tol);
    Verdict f1_sat = satake_limit_check(fam1, alpha, tol);
    Verdict f2_weak = weak_limit_check(fam2, nu, {}, tol);
    Verdict f2_sat = satake_limit_check(fam2, alpha, tol);

    json out;
    out["family_y_to_infinity"] = {{"weak_converges", f1_weak.converges}, {"satake_converges", f1_sat.converges}};
    out["family_x_to_infinity"] = {{"weak_converges", f2_weak.converges}, {"satake_converges", f2_sat.converges}};
    out["note"] = "weak convergence without Satake convergence witnesses Satake > weak for d = 2";
    if (csv) *csv = "# family_x_to_infinity weak trace\n" + verdict_trace_csv(f2_weak);
    return out;
}

template <class Ctx>
    requires(!Ctx::archimedean)
json example_d3weak(const Ctx& ctx, int n_terms, double tol, std::string* csv) {
    const long q = ctx.p;
    std::vector<NormRep<Ctx>> fast, bounded;
    for (int n = 1; n <= n_terms; ++n) {
        PosReal y = PosReal::prime_power(Int(q), Rat(n));
        fast.push_back(family_muygx(ctx, y, uniformizer_pow(ctx, -3 * n)));
        bounded.push_back(family_muygx(ctx, y, FieldOps<typename Ctx::K>::zero(ctx.k_model())));
    }
    auto sem_a = dual_seminorm(ctx, {PosReal::one(), PosReal::zero(), PosReal::zero()});
    auto sem_b = dual_seminorm(ctx, {PosReal::zero(), PosReal::one(), PosReal::zero()});
    auto alpha = full_flag_point(ctx, 3);

    Verdict fast_to_b = weak_limit_check(fast, sem_b, {}, tol);
    Verdict fast_to_a = weak_limit_check(fast, sem_a, {}, tol);
    Verdict fast_sat = satake_limit_check(fast, alpha, tol);
    Verdict bounded_to_a = weak_limit_check(bounded, sem_a, {}, tol);
    Verdict bounded_sat = satake_limit_check(bounded, alpha, tol);

    json out;
    out["fast_x"] = {{"weak_limit_is_b_seminorm", fast_to_b.converges},
                     {"weak_limit_is_a_seminorm", fast_to_a.converges},
                     {"satake_converges", fast_sat.converges}};
    out["bounded_x"] = {{"weak_limit_is_a_seminorm", bounded_to_a.converges},
                        {"satake_converges", bounded_sat.converges}};
    out["note"] = "two weak limits under one Satake limit: Satake is not finer than weak for d = 3";
    if (csv) *csv = "# fast_x weak trace\n" + verdict_trace_csv(fast_to_b);
    return out;
}

template <class Ctx>
    requires(!Ctx::archimedean)
json example_tow2(const Ctx& ctx, const Rat& r, int n_terms, double tol, std::string* csv) {
    using F = typename Ctx::F;
    const long q = ctx.p;
    if (r < 1) throw PreconditionError("tow2: r must be at least 1");
    std::vector<NormRep<Ctx>> seq;
    for (int n = 1; n <= n_terms; ++n) {
        auto x = uniformizer_pow(ctx, n);  // |x| -> 0
        PosReal eps = PosReal::prime_power(Int(q), Rat(-n)).div(PosReal::from_rat(r));
        seq.push_back(family_muxeps(ctx, x, eps));
    }
    // weak target: the seminorm max(|a|, |b|) on V*, the flat point (W, mu).
    auto target = dual_seminorm(ctx, {PosReal::one(), PosReal::one(), PosReal::zero()});
    Verdict weak = weak_limit_check(seq, target, {}, tol);

    Subspace<F> w = Subspace<F>::leading(3, 2, ctx.f_model());
    NormRep<Ctx> mu = NormRep<Ctx>::standard(ctx, 2);
    NormRep<Ctx> limit_claim = dual_seminorm(ctx, {PosReal::one(), PosReal::from_rat(r)});
    bool restrictions_equal_mu = true, restrictions_equal_claim = true;
    double dist_to_mu = 0;
    for (const auto& term : seq) {
        NormRep<Ctx> res = adapted_basis(term, w);
        // re-present in W-echelon coordinates
        Mat<typename Ctx::K> emb = embed_mat(ctx, mat_transpose(w.basis));
        Mat<typename Ctx::K> coords(2, 2, ctx.k_model());
        for (int j = 0; j < 2; ++j) {
            auto sol = mat_solve(emb, res.basis.col(j));
            coords.set_col(j, *sol);
        }
        NormRep<Ctx> res_w{ctx, coords, res.weights};
        restrictions_equal_mu = restrictions_equal_mu && class_eq(res_w, mu);
        restrictions_equal_claim = restrictions_equal_claim && class_eq(res_w, limit_claim);
        dist_to_mu = class_distance(res_w, mu);
    }
    json out;
    out["weak_converges_to_flat_point"] = weak.converges;
    out["restriction_limit_equals_mu"] = restrictions_equal_mu;
    out["restriction_limit_equals_weighted_claim"] = restrictions_equal_claim;
    out["restriction_distance_to_mu"] = dist_to_mu;
    out["r"] = rat_str(r);
    out["discontinuous"] = weak.converges && !restrictions_equal_mu;
    out["note"] = "restriction to W_v is weakly discontinuous at (W, mu) unless r = 1";
    if (csv) *csv = verdict_trace_csv(weak);
    return out;
}

template <class Ctx>
    requires(!Ctx::archimedean)
json example_nonhausdorff(const Ctx& ctx, const json& in, std::string* csv) {
    using K = typename Ctx::K;
    Mat<K> a, b;
    if (in.contains("a") && in["a"].is_array()) {
        a = mat_from_json<K>(in["a"], ctx.k_model());
        b = mat_from_json<K>(in["b"], ctx.k_model());
    } else {
        // d = 2 with scalar entries
        a = Mat<K>::identity(2, ctx.k_model());
        b = Mat<K>::identity(2, ctx.k_model());
        if (in.contains("a")) a.at(0, 1) = scalar_from_json<K>(in["a"], ctx.k_model());
        if (in.contains("b")) b.at(0, 1) = scalar_from_json<K>(in["b"], ctx.k_model());
        else b.at(0, 1) = FieldOps<K>::one(ctx.k_model());
    }
    auto rep = nonhausdorff_demo(ctx, a, b);
    json out;
    out["threshold"] = posreal_to_json(rep.threshold);
    out["threshold_double"] = rep.threshold_double;
    out["merged_at_threshold_verified"] = rep.verified;
    out["sharp_points_differ"] = rep.sharp_points_differ;
    out["note"] = "interior chart images merge for t at or below the threshold while the sharp points stay distinct";
    if (csv) *csv = "threshold\n" + std::to_string(rep.threshold_double) + "\n";
    return out;
}

json example_halfplane(const json& in, std::string* csv) {
    HalfPlanePoint z;
    if (in.contains("z")) {
        if (in["z"].is_string() && in["z"] == "inf") {
            z.infinity = true;
        } else {
            z.x = in["z"].at(0).get<double>();
            z.y = in["z"].at(1).get<double>();
        }
    } else {
        z.x = 1;
        z.y = 2;
    }
    json out;
    if (in.contains("c")) {
        out["member"] = halfplane_member_uc(z, in["c"].get<double>());
        out["kind"] = "U_c";
    } else if (in.contains("f")) {
        PiecewiseLinear f;
        for (const auto& p : in["f"]) f.pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        out["member"] = halfplane_member_uf(z, f);
        out["kind"] = "U_f";
    } else {
        // default demonstration: both neighborhood kinds at reference points
        PiecewiseLinear diag{{{-10, -10}, {10, 10}}};
        out["inf_in_Uc10"] = halfplane_member_uc(HalfPlanePoint{true}, 10);
        out["z1_in_Uf_diag"] = halfplane_member_uf(HalfPlanePoint{false, 1, 2}, diag);
        out["z2_in_Uf_diag"] = halfplane_member_uf(HalfPlanePoint{false, 2, 1}, diag);
    }
    if (csv) *csv = "";
    return out;
}

json run_example(const std::string& name, const json& in, const Options& opt, std::string* csv) {
    Place place = in.contains("place") ? place_from_json(in["place"]) : place_from_flag(opt.place);
    int n_terms = in.contains("n") ? in["n"].get<int>() : 40;
    double tol = opt.tol;
    if (in.contains("y_schedule") && in["y_schedule"] != "geometric")
        throw InputError("example: only the geometric y-schedule is registered");

    if (name == "halfplane") return example_halfplane(in, csv);

    if (place.archimedean()) throw PreconditionError("example: registered families need a non-archimedean place");

    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        if constexpr (Ctx::archimedean) {
            throw PreconditionError("example: registered families need a non-archimedean place");
        } else {
            if (name == "bssa") return example_bssa(ctx, n_terms, tol, csv);
            if (name == "bssb") return example_bssb(ctx, n_terms, tol, csv);
            if (name == "d3weak") return example_d3weak(ctx, n_terms, tol, csv);
            if (name == "tow2") {
                Rat r = in.contains("r") ? rat_from_json(in["r"]) : Rat(2);
                Place p3 = place;
                if (!in.contains("place") && !opt.place_explicit) p3 = Place::padic(3);
                return with_ctx(p3, [&](const auto& c3) -> json {
                    using C3 = std::decay_t<decltype(c3)>;
                    if constexpr (C3::archimedean)
                        throw PreconditionError("example: registered families need a non-archimedean place");
                    else
                        return example_tow2(c3, r, n_terms, tol, csv);
                });
            }
            if (name == "nonhausdorff") return example_nonhausdorff(ctx, in, csv);
            throw InputError("unknown example: " + name);
        }
    });
}

// ---------------------------------------------------------------------------
// Subcommand handlers

json handle_eval(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto mu = norm_from_json(ctx, in.at("norm"));
        std::vector<typename Ctx::K> x;
        for (const auto& c : in.at("x")) x.push_back(scalar_from_json<typename Ctx::K>(c, ctx.k_model()));
        return json{{"value", value_to_json<Ctx>(norm_eval(mu, x))}};
    });
}

json handle_dual(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        auto mu = norm_from_json(ctx, in.at("norm"));
        return json{{"norm", norm_to_json(norm_dual(mu))}};
    });
}

json handle_act(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto mu = norm_from_json(ctx, in.at("norm"));
        auto g = mat_from_json<typename Ctx::K>(in.at("g"), ctx.k_model());
        return json{{"norm", norm_to_json(norm_act(g, mu))}};
    });
}

json handle_induce(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        using F = typename Ctx::F;
        auto mu = norm_from_json(ctx, in.at("norm"));
        auto hp = Subspace<F>::from_rows(mat_from_json<F>(in.at("hp"), ctx.f_model()));
        auto hpp = in.contains("hpp") && !in["hpp"].empty()
                       ? Subspace<F>::from_rows(mat_from_json<F>(in.at("hpp"), ctx.f_model()))
                       : Subspace<F>::zero(hp.ambient, ctx.f_model());
        auto nu = induce_subquotient(mu, hp, hpp);
        json qb = json::array();
        for (const auto& v : quotient_basis(hp, hpp)) {
            json row = json::array();
            for (const auto& c : v) row.push_back(scalar_to_json(c));
            qb.push_back(std::move(row));
        }
        return json{{"norm", norm_to_json(nu)}, {"quotient_basis", std::move(qb)}};
    });
}

json handle_abs_rel(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto mu = norm_from_json(ctx, in.at("norm"));
        auto e = in.contains("e") ? mat_from_json<typename Ctx::K>(in.at("e"), ctx.k_model())
                                  : Mat<typename Ctx::K>::identity(mu.ambient(), ctx.k_model());
        return json{{"value", value_to_json<Ctx>(abs_rel(mu, e))}};
    });
}

json handle_class_eq(const Place& place, const json& in, double tol) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        auto a = norm_from_json(ctx, in.at("a"));
        auto b = norm_from_json(ctx, in.at("b"));
        json out{{"equal", class_eq(a, b, tol)}};
        if (a.is_norm() && b.is_norm()) out["distance"] = class_distance(a, b);
        return out;
    });
}

json handle_iwasawa(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto g = mat_from_json<typename Ctx::K>(in.at("g"), ctx.k_model());
        auto tri = iwasawa(ctx, g);
        json out{{"u", mat_to_json(tri.u)}, {"k", mat_to_json(tri.k)}};
        if constexpr (Ctx::archimedean) {
            out["t"] = tri.t;
        } else {
            out["exps"] = tri.exps;
            json t = json::array();
            for (std::size_t j = 0; j + 1 < tri.exps.size(); ++j)
                t.push_back(posreal_to_json(
                    PosReal::prime_power(Int(ctx.p), Rat(tri.exps[j] - tri.exps[j + 1]))));
            out["t"] = std::move(t);
        }
        return out;
    });
}

json handle_bruhat(const json& in) {
    long p = in.at("p").get<long>();
    if (!is_prime(p)) throw PreconditionError("bruhat: p must be prime");
    const auto& gj = in.at("g");
    int d = static_cast<int>(gj.size());
    Mat<Fp> g(d, d, Fp(static_cast<std::uint32_t>(p), 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g.at(i, j) = Fp(static_cast<std::uint32_t>(p), gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<long long>());
    auto f = bruhat_residue(g);
    auto fp_mat_json = [](const Mat<Fp>& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows; ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).v);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    return json{{"b", fp_mat_json(f.b)}, {"w", f.w}, {"b2", fp_mat_json(f.b2)}};
}

json handle_chart(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        if (in.contains("norm")) {
            auto mu = norm_from_json(ctx, in.at("norm"));
            return json{{"point", chart_to_json(chart_section(mu))}};
        }
        auto cp = chart_from_json(ctx, in.at("point"));
        auto bp = chart_point_to_boundary(ctx, cp);
        return json{{"boundary", boundary_to_json(bp)}, {"flat", flat_to_json(to_flat(bp))}};
    });
}

json handle_chart_eq(const Place& place, const json& in) {
    if (place.archimedean())
        throw PreconditionError("chart-eq: fiber relation is stated for non-archimedean places");
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        if constexpr (Ctx::archimedean) {
            throw PreconditionError("chart-eq: fiber relation is stated for non-archimedean places");
        } else {
            auto a = chart_from_json(ctx, in.at("a"));
            auto b = chart_from_json(ctx, in.at("b"));
            return json{{"equal", chart_fiber_eq(ctx, a, b)}};
        }
    });
}

json handle_phi(const Place& place, const json& in, bool prime) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        auto bp = boundary_from_json(ctx, in.at("point"));
        auto p = flag_from_json(ctx, in.at("P"));
        if (prime) return json{{"t", phi_prime_P(bp, p)}};
        json graded = json::array();
        for (const auto& rep : phi_P(bp, p)) graded.push_back(norm_to_json(rep));
        return json{{"graded", std::move(graded)}};
    });
}

json handle_xi(const Place& place, const json& in, bool star) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto p = flag_from_json(ctx, in.at("P"));
        auto g = in.contains("g") ? mat_from_json<typename Ctx::K>(in.at("g"), ctx.k_model())
                                  : Mat<typename Ctx::K>::identity(p.ambient, ctx.k_model());
        std::vector<NormRep<Ctx>> mus;
        for (const auto& m : in.at("mus")) mus.push_back(norm_from_json(ctx, m));
        std::vector<typename Ctx::W> t;
        for (const auto& x : in.at("t")) t.push_back(weight_from_json<Ctx>(x));
        auto bp = star ? xi_star(ctx, p, g, mus, t) : xi(ctx, p, g, mus, t);
        return json{{"boundary", boundary_to_json(bp)}};
    });
}

json handle_apartment_cover(const json& in) {
    std::vector<Rat> u;
    if (in.contains("logq")) {
        for (const auto& c : in.at("logq")) u.push_back(rat_from_json(c));
    } else {
        // weight coordinates r up to scale; each r_i must be an exact power
        // of q for the log coordinates to be rational
        long q = in.at("q").get<long>();
        if (!is_prime(q)) throw PreconditionError("apartment cover: q must be prime");
        for (const auto& c : in.at("r")) {
            Rat r = rat_from_json(c);
            if (r <= 0) throw PreconditionError("apartment cover: r must be positive");
            auto v = rat_valuation(r, Int(q));
            if (!v || !(r == rat_pow(Rat(q), *v)))
                throw PreconditionError("apartment cover: irrational log-coordinates unsupported");
            u.push_back(Rat(*v));
        }
    }
    auto cov = apartment_cover(u);
    json elements = json::array();
    for (const auto& el : cov) {
        json w = json::array();
        for (const auto& x : el.witness) w.push_back(rat_str(x));
        elements.push_back(json{{"diag_exponents", el.diag_exponents}, {"perm", el.perm}, {"witness", std::move(w)}});
    }
    return json{{"count", cov.size()}, {"elements", std::move(elements)}};
}

json handle_t_coords(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        if (in.contains("norm")) {
            auto mu = norm_from_json(ctx, in.at("norm"));
            return json{{"t", t_coords(mu)}};
        }
        auto bp = boundary_from_json(ctx, in.at("point"));
        return json{{"t", t_coords(bp)}};
    });
}

json handle_parabolic_type(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        auto bp = boundary_from_json(ctx, in.at("point"));
        auto t = parabolic_type_of(bp);
        return json{{"type", std::vector<int>(t.I.begin(), t.I.end())}, {"d", t.d}};
    });
}

json handle_siegel(const Place& place, const json& in) {
    SiegelParams sp;
    if (in.contains("c1")) sp.c1 = in["c1"].get<double>();
    if (in.contains("c2")) sp.c2 = in["c2"].get<double>();
    if (in.contains("height")) sp.height_bound = in["height"].get<double>();
    if (in.contains("c3")) sp.c3 = in["c3"].get<double>();
    if (in.contains("I"))
        for (const auto& i : in["I"]) sp.I.insert(i.get<int>());
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        SiegelCertificate<Ctx> cert;
        if (in.contains("norm"))
            cert = siegel_member(norm_from_json(ctx, in.at("norm")), sp);
        else
            cert = siegel_member(boundary_from_json(ctx, in.at("point")), sp);
        json out{{"member", cert.member},
                 {"t", cert.t},
                 {"max_entry", cert.max_entry},
                 {"chart", chart_to_json(cert.chart)}};
        if (!cert.member) out["reason"] = cert.reason;
        return out;
    });
}

json handle_reduce(const json& in) {
    Mat<Rat> gram = mat_from_json<Rat>(in.at("gram"), Rat(0));
    if (in.contains("d") && in["d"].get<int>() != gram.rows)
        throw InputError("reduce: d does not match the gram matrix");
    auto rr = reduce_point(gram);
    json tsq = json::array();
    for (const auto& q : rr.t_sq) tsq.push_back(rat_str(q));
    return json{{"gamma", mat_to_json(rr.gamma)},
                {"t", rr.t},
                {"t_squared", std::move(tsq)},
                {"g", mat_to_json(rr.chart_g)},
                {"c1", rr.c1}};
}

json handle_lemdet(const Place& place, const json& in) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        auto g = mat_from_json<typename Ctx::K>(in.at("g"), ctx.k_model());
        auto mu = norm_from_json(ctx, in.at("norm"));
        int i = in.at("i").get<int>();
        auto sides = lemdet_check(ctx, g, mu, i);
        return json{{"lhs", value_to_json<Ctx>(sides.lhs)},
                    {"rhs", value_to_json<Ctx>(sides.rhs)},
                    {"equal", sides.equal}};
    });
}

json handle_converge(const Place& place, const json& in, double tol, std::string* csv) {
    return with_ctx(place, [&](const auto& ctx) -> json {
        using Ctx = std::decay_t<decltype(ctx)>;
        std::vector<NormRep<Ctx>> seq;
        for (const auto& m : in.at("seq")) seq.push_back(norm_from_json(ctx, m));
        std::string kind = in.value("kind", "weak");
        Verdict v;
        if (kind == "weak") {
            auto target = in.contains("target_flat")
                              ? flat_seminorm(flat_from_json(ctx, in.at("target_flat")))
                              : norm_from_json(ctx, in.at("target"));
            std::vector<std::vector<typename Ctx::K>> probes;
            if (in.contains("probes"))
                for (const auto& p : in["probes"]) {
                    std::vector<typename Ctx::K> vec;
                    for (const auto& c : p) vec.push_back(scalar_from_json<typename Ctx::K>(c, ctx.k_model()));
                    probes.push_back(std::move(vec));
                }
            v = weak_limit_check(seq, target, probes, tol);
        } else if (kind == "satake") {
            auto target = boundary_from_json(ctx, in.at("target"));
            v = satake_limit_check(seq, target, tol);
        } else {
            throw InputError("converge: kind must be weak or satake");
        }
        if (csv) *csv = verdict_trace_csv(v);
        return verdict_to_json(v);
    });
}

struct SweepSpec {
    std::string param;
    double lo = 0, hi = 0;
    int steps = 0;
};

SweepSpec parse_sweep(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("sweep: expected param=lo:hi:steps");
    SweepSpec spec;
    spec.param = s.substr(0, eq);
    std::string rest = s.substr(eq + 1);
    auto c1 = rest.find(':');
    auto c2 = rest.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw InputError("sweep: expected param=lo:hi:steps");
    try {
        spec.lo = std::stod(rest.substr(0, c1));
        spec.hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        spec.steps = std::stoi(rest.substr(c2 + 1));
    } catch (...) {
        throw InputError("sweep: bad numbers in " + s);
    }
    if (spec.steps < 1) throw InputError("sweep: steps must be positive");
    return spec;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
    CLI::App app{"norm-geometry toolkit for PGL_d over local fields"};
    app.require_subcommand(0, 1);

    Options opt;
    app.add_option("--input", opt.input, "inline JSON input");
    app.add_option("--in", opt.infile, "JSON input file");
    auto* place_opt = app.add_option("--place", opt.place, "real | complex | padic:p | laurent:p[:inf]");
    app.add_option("--format", opt.format, "json | csv");
    app.add_option("--tol", opt.tol, "tolerance (default 1e-9)");
    app.add_option("--seed", opt.seed, "seed echoed into the output meta");
    app.add_option("--sweep", opt.sweep, "param=lo:hi:steps (example subcommand)");
    app.add_option("--jobs", opt.jobs, "parallel sweep evaluation");

    std::vector<std::string> names{"eval",  "dual",   "act",       "induce", "abs-rel", "class-eq",
                                   "iwasawa", "bruhat", "chart",     "chart-eq", "phi",   "phi-prime",
                                   "xi",    "xi-star", "apartment-cover", "t-coords", "parabolic-type",
                                   "siegel", "reduce", "lemdet",    "converge"};
    std::string gram_arg;
    long d_arg = 0;
    for (const auto& n : names) {
        auto* sub = app.add_subcommand(n);
        sub->fallthrough();
        if (n == "reduce") {
            sub->add_option("--gram", gram_arg, "gram matrix as a JSON array of rows");
            sub->add_option("--d", d_arg, "dimension (checked against the matrix)");
        }
    }
    auto* ex = app.add_subcommand("example");
    ex->fallthrough();
    std::string example_name;
    std::string y_schedule = "geometric";
    ex->add_option("name", example_name, "bssa | bssb | d3weak | tow2 | nonhausdorff | halfplane");
    ex->add_option("--y-schedule", y_schedule, "growth of the y parameter (geometric)");

    std::vector<const char*> argv;
    argv.push_back("normgeom");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            std::ostringstream os;
            os << "error: " << e.what() << "\n";
            return {2, os.str()};
        }
        opt.place_explicit = place_opt->count() > 0;
        auto subs = app.get_subcommands();
        if (subs.empty()) return {2, "error: missing subcommand\n"};
        std::string cmd = subs.front()->get_name();

        json in = json::object();
        if (cmd == "reduce" && !gram_arg.empty()) {
            try {
                in["gram"] = json::parse(gram_arg);
            } catch (const json::parse_error& e) {
                throw InputError(std::string("bad --gram json: ") + e.what());
            }
            if (d_arg > 0) in["d"] = d_arg;
        } else if (cmd == "example") {
            if (!opt.input.empty() || !opt.infile.empty()) in = load_input(opt);
            in["y_schedule"] = y_schedule;
        } else {
            in = load_input(opt);
        }
        Place place = Place::real();
        bool place_free = cmd == "bruhat" || cmd == "apartment-cover" || cmd == "reduce" || cmd == "example";
        if (!place_free) place = pick_place(opt, in);

        json out;
        std::string csv;
        if (cmd == "eval") out = handle_eval(place, in);
        else if (cmd == "dual") out = handle_dual(place, in);
        else if (cmd == "act") out = handle_act(place, in);
        else if (cmd == "induce") out = handle_induce(place, in);
        else if (cmd == "abs-rel") out = handle_abs_rel(place, in);
        else if (cmd == "class-eq") out = handle_class_eq(place, in, opt.tol);
        else if (cmd == "iwasawa") out = handle_iwasawa(place, in);
        else if (cmd == "bruhat") out = handle_bruhat(in);
        else if (cmd == "chart") out = handle_chart(place, in);
        else if (cmd == "chart-eq") out = handle_chart_eq(place, in);
        else if (cmd == "phi") out = handle_phi(place, in, false);
        else if (cmd == "phi-prime") out = handle_phi(place, in, true);
        else if (cmd == "xi") out = handle_xi(place, in, false);
        else if (cmd == "xi-star") out = handle_xi(place, in, true);
        else if (cmd == "apartment-cover") out = handle_apartment_cover(in);
        else if (cmd == "t-coords") out = handle_t_coords(place, in);
        else if (cmd == "parabolic-type") out = handle_parabolic_type(place, in);
        else if (cmd == "siegel") out = handle_siegel(place, in);
        else if (cmd == "reduce") out = handle_reduce(in);
        else if (cmd == "lemdet") out = handle_lemdet(place, in);
        else if (cmd == "converge") out = handle_converge(place, in, opt.tol, &csv);
        else if (cmd == "example") {
            if (example_name.empty()) return {2, "error: example name required\n"};
            if (!opt.sweep.empty()) {
                SweepSpec spec = parse_sweep(opt.sweep);
                std::vector<json> inputs(static_cast<std::size_t>(spec.steps));
                for (int i = 0; i < spec.steps; ++i) {
                    json step_in = in;
                    double val = spec.steps == 1
                                     ? spec.lo
                                     : spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
                    step_in[spec.param] = val;
                    inputs[static_cast<std::size_t>(i)] = std::move(step_in);
                }
                std::vector<json> results(inputs.size());
                int jobs = std::max(1, opt.jobs);
                std::vector<std::future<void>> futs;
                std::atomic<std::size_t> next{0};
                for (int w = 0; w < jobs; ++w)
                    futs.push_back(std::async(std::launch::async, [&]() {
                        for (;;) {
                            std::size_t i = next.fetch_add(1);
                            if (i >= inputs.size()) return;
                            std::string ignore;
                            results[i] = run_example(example_name, inputs[i], opt, &ignore);
                        }
                    }));
                for (auto& f : futs) f.get();
                if (opt.format == "csv") {
                    std::ostringstream os;
                    os << spec.param << ",result\n";
                    for (std::size_t i = 0; i < results.size(); ++i)
                        os << inputs[i][spec.param].get<double>() << ",\"" << results[i].dump() << "\"\n";
                    return {0, os.str()};
                }
                json sweep_out = json::array();
                for (std::size_t i = 0; i < results.size(); ++i)
                    sweep_out.push_back(json{{spec.param, inputs[i][spec.param]}, {"result", results[i]}});
                out = json{{"sweep", std::move(sweep_out)}};
            } else {
                out = run_example(example_name, in, opt, &csv);
            }
        } else {
            return {2, "error: unknown subcommand " + cmd + "\n"};
        }

        if (opt.format == "csv") {
            if (csv.empty()) return {2, "error: csv format is only available for trace-producing commands\n"};
            return {0, csv};
        }
        if (opt.seed != 0) out["seed"] = opt.seed;
        return {0, out.dump() + "\n"};
    } catch (const InputError& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const json::exception& e) {
        return {2, std::string("error: bad input: ") + e.what() + "\n"};
    } catch (const PreconditionError& e) {
        return {3, std::string("error: precondition violated: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {1, std::string("error: internal: ") + e.what() + "\n"};
    }
}

}  // namespace normgeom::cli
