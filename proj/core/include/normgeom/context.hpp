#pragma once

#include <variant>

#include "normgeom/subspace.hpp"

namespace normgeom {

// A place context fixes the scalar field of the completion (K), the global
// field it densely contains (F), and the weight/value scalar (W) that norm
// computations produce: exact PosReal at non-archimedean places, double at
// archimedean ones.

struct RealCtx {
    using F = Rat;
    using K = double;
    using W = double;
    static constexpr bool archimedean = true;
    static constexpr PlaceKind kind = PlaceKind::real;

    Place place() const { return Place::real(); }
    K embed(const F& x) const { return x.get_d(); }
    K k_model() const { return 0.0; }
    F f_model() const { return Rat(0); }
    W abs(const K& a) const { return std::fabs(a); }
};

struct ComplexCtx {
    using F = Rat;
    using K = Cplx;
    using W = double;
    static constexpr bool archimedean = true;
    static constexpr PlaceKind kind = PlaceKind::complex_;

    Place place() const { return Place::complex_(); }
    K embed(const F& x) const { return Cplx(x.get_d(), 0); }
    K k_model() const { return Cplx(0, 0); }
    F f_model() const { return Rat(0); }
    W abs(const K& a) const { return std::norm(a); }  // square of the usual modulus
};

struct PadicCtx {
    using F = Rat;
    using K = Rat;
    using W = PosReal;
    static constexpr bool archimedean = false;
    static constexpr PlaceKind kind = PlaceKind::padic;

    long p = 2;

    Place place() const { return Place::padic(p); }
    K embed(const F& x) const { return x; }
    K k_model() const { return Rat(0); }
    F f_model() const { return Rat(0); }
    W abs(const K& a) const {
        auto v = rat_valuation(a, Int(p));
        if (!v) return PosReal::zero();
        return PosReal::prime_power(Int(p), Rat(-*v));
    }
};

struct LaurentCtx {
    using F = FpRatFun;
    using K = FpRatFun;
    using W = PosReal;
    static constexpr bool archimedean = false;
    static constexpr PlaceKind kind = PlaceKind::laurent;

    long p = 2;
    bool at_infinity = false;

    Place place() const { return Place::laurent(p, at_infinity); }
    K embed(const F& x) const { return x; }
    K k_model() const { return FpRatFun::zero(static_cast<std::uint32_t>(p)); }
    F f_model() const { return k_model(); }
    W abs(const K& a) const {
        auto v = a.order(at_infinity);
        if (!v) return PosReal::zero();
        return PosReal::prime_power(Int(p), Rat(-*v));
    }
};

// Weight-scalar helpers, so norm code can be written once for both the
// exact and the floating weight types.
template <class Ctx>
struct Wops;

template <class Ctx>
    requires(Ctx::archimedean)
struct Wops<Ctx> {
    using W = double;
    static W zero() { return 0.0; }
    static W one() { return 1.0; }
    static bool is_zero(const W& w) { return w == 0.0; }
    static W mul(const W& a, const W& b) { return a * b; }
    static W div(const W& a, const W& b) { return a / b; }
    static W pow(const W& a, const Rat& e) { return std::pow(a, e.get_d()); }
    static W max(const W& a, const W& b) { return a > b ? a : b; }
    static int cmp(const W& a, const W& b) { return a < b ? -1 : (a > b ? 1 : 0); }
    static double to_double(const W& a) { return a; }
    static W from_rat(const Rat& q) { return q.get_d(); }
};

template <class Ctx>
    requires(!Ctx::archimedean)
struct Wops<Ctx> {
    using W = PosReal;
    static W zero() { return PosReal::zero(); }
    static W one() { return PosReal::one(); }
    static bool is_zero(const W& w) { return w.is_zero(); }
    static W mul(const W& a, const W& b) { return a.mul(b); }
    static W div(const W& a, const W& b) { return a.div(b); }
    static W pow(const W& a, const Rat& e) { return a.pow(e); }
    static W max(const W& a, const W& b) { return pr_max(a, b); }
    static int cmp(const W& a, const W& b) { return a.cmp(b); }
    static double to_double(const W& a) { return a.to_double(); }
    static W from_rat(const Rat& q) { return PosReal::from_rat(q); }
};

using AnyCtx = std::variant<RealCtx, ComplexCtx, PadicCtx, LaurentCtx>;

inline AnyCtx ctx_for(const Place& v) {
    switch (v.kind) {
        case PlaceKind::real:
            return RealCtx{};
        case PlaceKind::complex_:
            return ComplexCtx{};
        case PlaceKind::padic:
            return PadicCtx{v.p};
        case PlaceKind::laurent:
            return LaurentCtx{v.p, v.at_infinity};
    }
    throw PreconditionError("place: unknown kind");
}

}  // namespace normgeom
