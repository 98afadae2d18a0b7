#pragma once

#include <random>

#include "normgeom/topolab.hpp"

// Shared generators for the randomized suites. Everything is seeded
// explicitly so failures reproduce.

namespace testsupport {

using namespace normgeom;

using Rng = std::mt19937_64;

inline long rnd_int(Rng& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline Rat rnd_rat(Rng& rng, long lo = -9, long hi = 9, long maxden = 4) {
    return make_rat(rnd_int(rng, lo, hi), rnd_int(rng, 1, maxden));
}

inline Rat rnd_pos_rat(Rng& rng, long hi = 9, long maxden = 4) {
    return make_rat(rnd_int(rng, 1, hi), rnd_int(rng, 1, maxden));
}

template <class Ctx>
typename Ctx::K rnd_scalar(Rng& rng, const Ctx& ctx) {
    if constexpr (Ctx::kind == PlaceKind::real) {
        return static_cast<double>(rnd_int(rng, -400, 400)) / 100.0;
    } else if constexpr (Ctx::kind == PlaceKind::complex_) {
        return Cplx(static_cast<double>(rnd_int(rng, -400, 400)) / 100.0,
                    static_cast<double>(rnd_int(rng, -400, 400)) / 100.0);
    } else if constexpr (Ctx::kind == PlaceKind::padic) {
        return rnd_rat(rng);
    } else {
        auto p = static_cast<std::uint32_t>(ctx.p);
        FpPoly num(p), den(p);
        for (int i = 0; i <= static_cast<int>(rng() % 3); ++i)
            num.c.push_back(static_cast<std::uint32_t>(rng() % p));
        num.trim();
        den = FpPoly::monomial(p, 1, rng() % 2);
        if (num.is_zero()) return FpRatFun::zero(p);
        return FpRatFun(num, den);
    }
}

template <class Ctx>
typename Ctx::K rnd_nonzero_scalar(Rng& rng, const Ctx& ctx) {
    for (;;) {
        auto x = rnd_scalar(rng, ctx);
        if (!FieldOps<typename Ctx::K>::is_zero(x)) return x;
    }
}

template <class Ctx>
Mat<typename Ctx::K> rnd_invertible(Rng& rng, const Ctx& ctx, int d) {
    using K = typename Ctx::K;
    for (;;) {
        Mat<K> m(d, d, ctx.k_model());
        for (auto& x : m.a) x = rnd_scalar(rng, ctx);
        if constexpr (FieldOps<K>::exact) {
            if (!FieldOps<K>::is_zero(mat_det(m))) return m;
        } else {
            if (FieldOps<K>::mag(mat_det(m)) > 0.05) return m;
        }
    }
}

// Random invertible matrix over the global field F.
template <class Ctx>
Mat<typename Ctx::F> rnd_invertible_global(Rng& rng, const Ctx& ctx, int d, long lo = -4, long hi = 4) {
    using F = typename Ctx::F;
    for (;;) {
        Mat<F> m(d, d, ctx.f_model());
        for (auto& x : m.a) {
            if constexpr (std::is_same_v<F, Rat>) {
                x = Rat(rnd_int(rng, lo, hi));
            } else {
                auto p = static_cast<std::uint32_t>(ctx.p);
                FpPoly num(p);
                for (int i = 0; i <= 1; ++i) num.c.push_back(static_cast<std::uint32_t>(rng() % p));
                num.trim();
                x = FpRatFun(num, FpPoly::constant(p, 1));
            }
        }
        if (!FieldOps<F>::is_zero(mat_det(m))) return m;
    }
}

template <class Ctx>
typename Ctx::W rnd_weight(Rng& rng, const Ctx&) {
    if constexpr (Ctx::archimedean)
        return static_cast<double>(rnd_int(rng, 1, 40)) / 10.0;
    else
        return PosReal::from_rat(rnd_pos_rat(rng, 9, 4));
}

template <class Ctx>
NormRep<Ctx> rnd_norm(Rng& rng, const Ctx& ctx, int d) {
    NormRep<Ctx> mu;
    mu.ctx = ctx;
    mu.basis = rnd_invertible(rng, ctx, d);
    for (int i = 0; i < d; ++i) mu.weights.push_back(rnd_weight(rng, ctx));
    return mu;
}

template <class Ctx>
NormRep<Ctx> rnd_diagonal_norm(Rng& rng, const Ctx& ctx, int d) {
    std::vector<typename Ctx::W> w;
    for (int i = 0; i < d; ++i) w.push_back(rnd_weight(rng, ctx));
    return NormRep<Ctx>::diagonal(ctx, std::move(w));
}

template <class Ctx>
std::vector<typename Ctx::K> rnd_vector(Rng& rng, const Ctx& ctx, int d) {
    std::vector<typename Ctx::K> v;
    for (int i = 0; i < d; ++i) v.push_back(rnd_scalar(rng, ctx));
    return v;
}

template <class Ctx>
std::vector<typename Ctx::K> rnd_nonzero_vector(Rng& rng, const Ctx& ctx, int d) {
    for (;;) {
        auto v = rnd_vector(rng, ctx, d);
        for (const auto& x : v)
            if (!FieldOps<typename Ctx::K>::is_zero(x)) return v;
    }
}

// Random subspace of F^d of the given dimension.
template <class Ctx>
Subspace<typename Ctx::F> rnd_subspace(Rng& rng, const Ctx& ctx, int d, int dim) {
    using F = typename Ctx::F;
    for (;;) {
        Mat<F> rows(dim, d, ctx.f_model());
        for (auto& x : rows.a) {
            if constexpr (std::is_same_v<F, Rat>) {
                x = Rat(rnd_int(rng, -3, 3));
            } else {
                x = FpRatFun::constant(static_cast<std::uint32_t>(ctx.p), rnd_int(rng, 0, ctx.p - 1));
            }
        }
        auto s = Subspace<F>::from_rows(rows);
        if (s.dim() == dim) return s;
    }
}

template <class Ctx>
Mat<typename Ctx::K> rnd_unipotent(Rng& rng, const Ctx& ctx, int d) {
    using K = typename Ctx::K;
    Mat<K> g = Mat<K>::identity(d, ctx.k_model());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) g.at(i, j) = rnd_scalar(rng, ctx);
    return g;
}

inline RealCtx real_ctx() { return RealCtx{}; }
inline ComplexCtx complex_ctx() { return ComplexCtx{}; }
inline PadicCtx padic_ctx(long p) { return PadicCtx{p}; }
inline LaurentCtx laurent_ctx(long p, bool inf = false) { return LaurentCtx{p, inf}; }

}  // namespace testsupport
