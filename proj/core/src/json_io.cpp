#include "normgeom/json_io.hpp"

#include <sstream>

namespace normgeom {

Place place_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw InputError("place: expected {kind, ...}");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "real") return Place::real();
    if (kind == "complex") return Place::complex_();
    if (kind == "padic") return Place::padic(j.at("p").get<long>());
    if (kind == "laurent") {
        bool inf = j.contains("at") && j["at"].get<std::string>() == "1/T";
        return Place::laurent(j.at("p").get<long>(), inf);
    }
    throw InputError("place: unknown kind " + kind);
}

json place_to_json(const Place& v) {
    switch (v.kind) {
        case PlaceKind::real:
            return json{{"kind", "real"}};
        case PlaceKind::complex_:
            return json{{"kind", "complex"}};
        case PlaceKind::padic:
            return json{{"kind", "padic"}, {"p", v.p}};
        case PlaceKind::laurent:
            return json{{"kind", "laurent"}, {"p", v.p}, {"at", v.at_infinity ? "1/T" : "T"}};
    }
    throw InputError("place: unknown kind");
}

Place place_from_flag(const std::string& s) {
    if (s == "real") return Place::real();
    if (s == "complex") return Place::complex_();
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InputError("place: expected real|complex|padic:p|laurent:p[:inf]");
    std::string kind = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    bool inf = false;
    auto colon2 = rest.find(':');
    if (colon2 != std::string::npos) {
        inf = rest.substr(colon2 + 1) == "inf";
        rest = rest.substr(0, colon2);
    }
    long p = 0;
    try {
        p = std::stol(rest);
    } catch (...) {
        throw InputError("place: bad prime in " + s);
    }
    if (kind == "padic") return Place::padic(p);
    if (kind == "laurent") return Place::laurent(p, inf);
    throw InputError("place: unknown kind " + kind);
}

json rat_to_json(const Rat& q) { return json(rat_str(q)); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_number_float()) {
        Rat q;
        mpq_set_d(q.get_mpq_t(), j.get<double>());
        return q;
    }
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw InputError("rational: expected string or number");
}

json posreal_to_json(const PosReal& w) {
    if (w.is_rational()) return rat_to_json(w.to_rat());
    json factors = json::array();
    for (const auto& [p, e] : w.factors()) factors.push_back(json::array({p.get_str(), rat_str(e)}));
    return json{{"factors", std::move(factors)}};
}

PosReal posreal_from_json(const json& j) {
    if (j.is_object() && j.contains("factors")) {
        PosReal w = PosReal::one();
        for (const auto& f : j["factors"]) {
            if (!f.is_array() || f.size() != 2) throw InputError("weight: bad factor entry");
            Int p(f[0].get<std::string>());
            w = w.mul(PosReal::prime_power(p, parse_rat(f[1].get<std::string>())));
        }
        return w;
    }
    return PosReal::from_rat(rat_from_json(j));
}

json scalar_to_json(double x) { return json(x); }
json scalar_to_json(const Cplx& x) { return json::array({x.real(), x.imag()}); }
json scalar_to_json(const Rat& x) { return rat_to_json(x); }
json scalar_to_json(const FpRatFun& x) {
    json num = json::array(), den = json::array();
    for (auto c : x.num.c) num.push_back(c);
    for (auto c : x.den.c) den.push_back(c);
    return json{{"num", std::move(num)}, {"den", std::move(den)}};
}

template <>
double scalar_from_json<double>(const json& j, const double&) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_rat(j.get<std::string>()).get_d();
    throw InputError("scalar: expected a real number");
}

template <>
Cplx scalar_from_json<Cplx>(const json& j, const Cplx&) {
    if (j.is_number()) return Cplx(j.get<double>(), 0);
    if (j.is_array() && j.size() == 2) return Cplx(j[0].get<double>(), j[1].get<double>());
    if (j.is_string()) return Cplx(parse_rat(j.get<std::string>()).get_d(), 0);
    throw InputError("scalar: expected [re, im]");
}

template <>
Rat scalar_from_json<Rat>(const json& j, const Rat&) {
    return rat_from_json(j);
}

template <>
FpRatFun scalar_from_json<FpRatFun>(const json& j, const FpRatFun& model) {
    auto p = model.prime();
    if (j.is_number_integer()) return FpRatFun::constant(p, j.get<long long>());
    if (!j.is_object() || !j.contains("num")) throw InputError("scalar: expected {num, den} coefficient lists");
    FpPoly num(p), den(p);
    for (const auto& c : j["num"]) num.c.push_back(static_cast<std::uint32_t>(((c.get<long long>() % p) + p) % p));
    num.trim();
    if (j.contains("den")) {
        for (const auto& c : j["den"]) den.c.push_back(static_cast<std::uint32_t>(((c.get<long long>() % p) + p) % p));
        den.trim();
    } else {
        den = FpPoly::constant(p, 1);
    }
    return FpRatFun(num, den);
}

json verdict_to_json(const Verdict& v) {
    json out;
    out["converges"] = v.converges;
    out["limit_kind"] = v.limit_kind;
    out["notes"] = v.notes;
    out["schedule_length"] = v.trace.size();
    out["tail_window"] = Verdict::tail_window;
    return out;
}

std::string verdict_trace_csv(const Verdict& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.trace_header.size(); ++i)
        os << (i ? "," : "") << v.trace_header[i];
    os << "\n";
    os.precision(17);
    for (const auto& row : v.trace) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace normgeom
