#pragma once

#include <json.hpp>

#include "normgeom/topolab.hpp"

namespace normgeom {

using json = nlohmann::json;

// Wire encodings (all bit-exact for the exact scalar kinds):
//   rational        "num/den" string (or plain integer / integer string)
//   real            number
//   complex         [re, im]
//   laurent         {"num": [c0, c1, ...], "den": [...]} coefficients mod p
//   weight          number (archimedean); "num/den" (non-archimedean), or
//                   {"factors": [["p", "num/den"], ...]} when irrational
//   matrix          row-major array of rows; basis vectors are the columns
//   place           {"kind": "real"|"complex"|"padic"|"laurent",
//                    "p": prime, "at": "T"|"1/T"}

Place place_from_json(const json& j);
json place_to_json(const Place& v);
Place place_from_flag(const std::string& s);  // real | complex | padic:p | laurent:p[:inf]

json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

json posreal_to_json(const PosReal& w);
PosReal posreal_from_json(const json& j);

json scalar_to_json(double x);
json scalar_to_json(const Cplx& x);
json scalar_to_json(const Rat& x);
json scalar_to_json(const FpRatFun& x);

template <class K>
K scalar_from_json(const json& j, const K& model);

template <>
double scalar_from_json<double>(const json& j, const double&);
template <>
Cplx scalar_from_json<Cplx>(const json& j, const Cplx&);
template <>
Rat scalar_from_json<Rat>(const json& j, const Rat&);
template <>
FpRatFun scalar_from_json<FpRatFun>(const json& j, const FpRatFun& model);

template <class K>
json mat_to_json(const Mat<K>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class K>
Mat<K> mat_from_json(const json& j, const K& model) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix: expected an array of rows");
    Mat<K> m(static_cast<int>(j.size()), static_cast<int>(j[0].size()), model);
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != m.cols)
            throw InputError("matrix: ragged rows");
        for (int c = 0; c < m.cols; ++c)
            m.at(i, c) = scalar_from_json<K>(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], model);
    }
    return m;
}

template <class Ctx>
json weight_to_json(const typename Ctx::W& w) {
    if constexpr (Ctx::archimedean)
        return json(w);
    else
        return posreal_to_json(w);
}

template <class Ctx>
typename Ctx::W weight_from_json(const json& j) {
    if constexpr (Ctx::archimedean) {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) return rat_from_json(j).get_d();
        throw InputError("weight: expected a number");
    } else {
        return posreal_from_json(j);
    }
}

template <class Ctx>
json norm_to_json(const NormRep<Ctx>& mu) {
    json out;
    out["place"] = place_to_json(mu.ctx.place());
    out["basis"] = mat_to_json(mu.basis);
    json w = json::array();
    for (const auto& x : mu.weights) w.push_back(weight_to_json<Ctx>(x));
    out["weights"] = std::move(w);
    return out;
}

template <class Ctx>
NormRep<Ctx> norm_from_json(const Ctx& ctx, const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("weights"))
        throw InputError("norm: expected {basis, weights}");
    NormRep<Ctx> mu;
    mu.ctx = ctx;
    mu.basis = mat_from_json<typename Ctx::K>(j["basis"], ctx.k_model());
    for (const auto& w : j["weights"]) mu.weights.push_back(weight_from_json<Ctx>(w));
    if (static_cast<int>(mu.weights.size()) != mu.basis.cols) throw InputError("norm: weight count mismatch");
    mu.validate();
    return mu;
}

template <class Ctx>
json flag_to_json(const Flag<typename Ctx::F>& f) {
    json steps = json::array();
    for (const auto& s : f.steps) steps.push_back(mat_to_json(s.basis));
    return json{{"d", f.ambient}, {"steps", std::move(steps)}};
}

template <class Ctx>
Flag<typename Ctx::F> flag_from_json(const Ctx& ctx, const json& j) {
    using F = typename Ctx::F;
    Flag<F> f;
    if (j.is_object() && j.contains("dims")) {
        // {"d": n, "dims": [..]} denotes the standard parabolic flag
        ParabolicType t;
        t.d = j.at("d").get<int>();
        for (const auto& i : j.at("dims")) t.I.insert(i.get<int>());
        return standard_parabolic(t, ctx.f_model());
    }
    if (!j.is_object() || !j.contains("d") || !j.contains("steps")) throw InputError("flag: expected {d, steps}");
    f.ambient = j["d"].get<int>();
    for (const auto& s : j["steps"])
        f.steps.push_back(Subspace<F>::from_rows(mat_from_json<F>(s, ctx.f_model())));
    f.validate();
    return f;
}

template <class Ctx>
json boundary_to_json(const BoundaryPoint<Ctx>& bp) {
    json out;
    out["place"] = place_to_json(bp.graded.at(0).ctx.place());
    out["flag"] = flag_to_json<Ctx>(bp.flag);
    json g = json::array();
    for (const auto& rep : bp.graded) {
        json e;
        e["basis"] = mat_to_json(rep.basis);
        json w = json::array();
        for (const auto& x : rep.weights) w.push_back(weight_to_json<Ctx>(x));
        e["weights"] = std::move(w);
        g.push_back(std::move(e));
    }
    out["graded"] = std::move(g);
    return out;
}

template <class Ctx>
BoundaryPoint<Ctx> boundary_from_json(const Ctx& ctx, const json& j) {
    BoundaryPoint<Ctx> bp;
    bp.flag = flag_from_json(ctx, j.at("flag"));
    for (const auto& e : j.at("graded")) bp.graded.push_back(norm_from_json(ctx, e));
    bp.validate();
    return bp;
}

template <class Ctx>
json flat_to_json(const FlatPoint<Ctx>& fp) {
    json cls;
    cls["basis"] = mat_to_json(fp.cls.basis);
    json w = json::array();
    for (const auto& x : fp.cls.weights) w.push_back(weight_to_json<Ctx>(x));
    cls["weights"] = std::move(w);
    return json{{"W", mat_to_json(fp.w.basis)}, {"class", std::move(cls)}};
}

template <class Ctx>
FlatPoint<Ctx> flat_from_json(const Ctx& ctx, const json& j) {
    FlatPoint<Ctx> fp;
    fp.w = Subspace<typename Ctx::F>::from_rows(mat_from_json<typename Ctx::F>(j.at("W"), ctx.f_model()));
    fp.cls = norm_from_json(ctx, j.at("class"));
    return fp;
}

template <class Ctx>
json chart_to_json(const ChartPoint<Ctx>& cp) {
    json t = json::array();
    for (const auto& x : cp.t) t.push_back(weight_to_json<Ctx>(x));
    return json{{"g", mat_to_json(cp.g)}, {"t", std::move(t)}};
}

template <class Ctx>
ChartPoint<Ctx> chart_from_json(const Ctx& ctx, const json& j) {
    ChartPoint<Ctx> cp;
    cp.g = mat_from_json<typename Ctx::K>(j.at("g"), ctx.k_model());
    for (const auto& t : j.at("t")) cp.t.push_back(weight_from_json<Ctx>(t));
    cp.validate();
    return cp;
}

json verdict_to_json(const Verdict& v);
std::string verdict_trace_csv(const Verdict& v);

}  // namespace normgeom
