#pragma once

#include "normgeom/norm.hpp"

namespace normgeom {

// g = u a k with u unipotent upper triangular, a diagonal, k in the standard
// maximal compact. Archimedean: a is recorded through its t-coordinates and
// the triple is unique. Non-archimedean: a = diag(pi^{e_i}) and k lies in
// GL_d(O_v); the triple is not unique, but the column-reduction pivot order
// makes this construction deterministic.
template <class Ctx>
struct IwasawaTriple {
    using K = typename Ctx::K;

    Mat<K> u;
    std::vector<double> t;   // archimedean only, d-1 entries
    double alpha0 = 1.0;     // archimedean overall diagonal scale
    std::vector<long> exps;  // non-archimedean only, d entries
    Mat<K> k;

    // Reconstructs u a k.
    Mat<K> recompose(const Ctx& ctx) const {
        int d = u.rows;
        Mat<K> a = Mat<K>::identity(d, ctx.k_model());
        if constexpr (Ctx::archimedean) {
            // t determines the diagonal up to scale; alpha0 pins the scale so
            // the reconstruction matches g as a GL matrix, not merely in PGL.
            double alpha = alpha0;
            std::vector<double> alphas{alpha};
            for (std::size_t j = 0; j < t.size(); ++j) {
                double step = Ctx::kind == PlaceKind::real ? t[j] : std::sqrt(t[j]);
                alpha *= step;
                alphas.push_back(alpha);
            }
            for (int i = 0; i < d; ++i) {
                if constexpr (Ctx::kind == PlaceKind::real)
                    a.at(i, i) = alphas[static_cast<std::size_t>(i)];
                else
                    a.at(i, i) = Cplx(alphas[static_cast<std::size_t>(i)], 0);
            }
        } else {
            for (int i = 0; i < d; ++i) a.at(i, i) = uniformizer_power(ctx, exps[static_cast<std::size_t>(i)]);
        }
        return mat_mul(u, mat_mul(a, k));
    }

    static K uniformizer_power(const Ctx& ctx, long e) {
        if constexpr (Ctx::kind == PlaceKind::padic) {
            return rat_pow(Rat(ctx.p), e);
        } else if constexpr (Ctx::kind == PlaceKind::laurent) {
            auto pr = static_cast<std::uint32_t>(ctx.p);
            FpRatFun tvar = FpRatFun::variable(pr);
            if (ctx.at_infinity) tvar = rf_inv(tvar);
            FpRatFun r = FpRatFun::one(pr);
            FpRatFun base = e >= 0 ? tvar : rf_inv(tvar);
            for (long i = 0; i < (e >= 0 ? e : -e); ++i) r = rf_mul(r, base);
            return r;
        } else {
            throw PreconditionError("iwasawa: uniformizer at archimedean place");
        }
    }
};

namespace detail {

template <class Ctx>
IwasawaTriple<Ctx> iwasawa_arch(const Ctx& ctx, const Mat<typename Ctx::K>& g) {
    using K = typename Ctx::K;
    int d = g.rows;
    // Gram-Schmidt on rows from the bottom: row_i = sum_{j >= i} R_ij k_j
    // with orthonormal rows k_j, so R is upper triangular with positive
    // diagonal and g = R k.
    Mat<K> k(d, d, ctx.k_model());
    Mat<K> R(d, d, ctx.k_model());
    for (int i = d - 1; i >= 0; --i) {
        std::vector<K> v(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = g.at(i, j);
        for (int j = d - 1; j > i; --j) {
            K c{};
            for (int l = 0; l < d; ++l) c += v[static_cast<std::size_t>(l)] * FieldOps<K>::conj(k.at(j, l));
            R.at(i, j) = c;
            for (int l = 0; l < d; ++l) v[static_cast<std::size_t>(l)] -= c * k.at(j, l);
        }
        double nrm = 0;
        for (int l = 0; l < d; ++l) nrm += std::norm(Cplx(v[static_cast<std::size_t>(l)]));
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-12) throw PreconditionError("iwasawa: singular matrix");
        R.at(i, i) = nrm;
        for (int l = 0; l < d; ++l) k.at(i, l) = v[static_cast<std::size_t>(l)] / nrm;
    }
    IwasawaTriple<Ctx> out;
    out.k = std::move(k);
    out.u = Mat<K>::identity(d, ctx.k_model());
    std::vector<double> alpha(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) alpha[static_cast<std::size_t>(i)] = Cplx(R.at(i, i)).real();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) out.u.at(i, j) = R.at(i, j) / alpha[static_cast<std::size_t>(j)];
    out.t.resize(static_cast<std::size_t>(d - 1));
    out.alpha0 = alpha[0];
    for (int i = 0; i + 1 < d; ++i) {
        double ratio = alpha[static_cast<std::size_t>(i + 1)] / alpha[static_cast<std::size_t>(i)];
        out.t[static_cast<std::size_t>(i)] = Ctx::kind == PlaceKind::real ? ratio : ratio * ratio;
    }
    return out;
}

template <class Ctx>
long scalar_val(const Ctx& ctx, const typename Ctx::K& x) {
    if constexpr (Ctx::kind == PlaceKind::padic) {
        auto v = rat_valuation(x, Int(ctx.p));
        if (!v) throw PreconditionError("iwasawa: valuation of zero");
        return *v;
    } else {
        auto v = x.order(ctx.at_infinity);
        if (!v) throw PreconditionError("iwasawa: valuation of zero");
        return *v;
    }
}

template <class Ctx>
IwasawaTriple<Ctx> iwasawa_nonarch(const Ctx& ctx, const Mat<typename Ctx::K>& g) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    int d = g.rows;
    Mat<K> r = g;
    Mat<K> kacc = Mat<K>::identity(d, ctx.k_model());

    auto col_scale = [&](int j, const K& c) {
        for (int i = 0; i < d; ++i) {
            r.at(i, j) = F::mul(r.at(i, j), c);
            kacc.at(i, j) = F::mul(kacc.at(i, j), c);
        }
    };
    auto col_axpy = [&](int dst, int src, const K& c) {  // col_dst += c * col_src
        for (int i = 0; i < d; ++i) {
            r.at(i, dst) = F::add(r.at(i, dst), F::mul(c, r.at(i, src)));
            kacc.at(i, dst) = F::add(kacc.at(i, dst), F::mul(c, kacc.at(i, src)));
        }
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < d; ++i) {
            std::swap(r.at(i, a), r.at(i, b));
            std::swap(kacc.at(i, a), kacc.at(i, b));
        }
    };

    std::vector<long> exps(static_cast<std::size_t>(d), 0);
    for (int i = d - 1; i >= 0; --i) {
        int best = -1;
        long bestval = 0;
        for (int j = 0; j <= i; ++j) {
            if (F::is_zero(r.at(i, j))) continue;
            long v = scalar_val(ctx, r.at(i, j));
            if (best < 0 || v < bestval) {
                best = j;
                bestval = v;
            }
        }
        if (best < 0) throw PreconditionError("iwasawa: singular matrix");
        if (best != i) col_swap(best, i);
        K pw = IwasawaTriple<Ctx>::uniformizer_power(ctx, bestval);
        col_scale(i, F::div(pw, r.at(i, i)));  // unit scaling, pivot becomes pi^e
        exps[static_cast<std::size_t>(i)] = bestval;
        for (int j = 0; j < i; ++j) {
            if (F::is_zero(r.at(i, j))) continue;
            col_axpy(j, i, F::neg(F::div(r.at(i, j), r.at(i, i))));
        }
    }

    IwasawaTriple<Ctx> out;
    out.exps = std::move(exps);
    out.k = mat_inverse(kacc);
    out.u = Mat<K>::identity(d, ctx.k_model());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            K pw = IwasawaTriple<Ctx>::uniformizer_power(ctx, out.exps[static_cast<std::size_t>(j)]);
            out.u.at(i, j) = F::div(r.at(i, j), pw);
        }
    return out;
}

}  // namespace detail

template <class Ctx>
IwasawaTriple<Ctx> iwasawa(const Ctx& ctx, const Mat<typename Ctx::K>& g) {
    if (g.rows != g.cols) throw PreconditionError("iwasawa: non-square matrix");
    if constexpr (Ctx::archimedean)
        return detail::iwasawa_arch(ctx, g);
    else
        return detail::iwasawa_nonarch(ctx, g);
}

// Bruhat decomposition over the residue field: g = b w b' with b, b' upper
// triangular and w the permutation matrix of the unique Weyl element.
struct BruhatFactors {
    Mat<Fp> b;
    std::vector<int> w;  // w[j] = pivot row of column j
    Mat<Fp> b2;

    Mat<Fp> w_matrix(std::uint32_t p) const {
        int d = static_cast<int>(w.size());
        Mat<Fp> m(d, d, Fp(p, 0));
        for (int j = 0; j < d; ++j) m.at(w[static_cast<std::size_t>(j)], j) = Fp(p, 1);
        return m;
    }
};

BruhatFactors bruhat_residue(const Mat<Fp>& g);

}  // namespace normgeom
