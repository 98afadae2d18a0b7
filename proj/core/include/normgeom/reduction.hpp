#pragma once

#include "normgeom/apartment.hpp"

namespace normgeom {

// Parameters of the Siegel set S(C; c1, c2): t-coordinates at most c1 and
// the unipotent chart coordinate bounded entrywise by height_bound. The c2
// comparability constant is vacuous with a single place and is carried for
// the record; c3 and I describe the thinned set S_I(c1, c2, c3).
struct SiegelParams {
    double c1 = 1.0;
    double c2 = 1.0;
    double height_bound = 0.5;
    std::optional<double> c3;
    std::set<int> I;
};

template <class Ctx>
struct SiegelCertificate {
    bool member = false;
    ChartPoint<Ctx> chart;  // fiber-reduced witness
    std::vector<double> t;
    double max_entry = 0;
    std::string reason;
};

// t-coordinates: the full-flag phi' of the point.
template <class Ctx>
std::vector<typename Ctx::W> t_coords_exact(const BoundaryPoint<Ctx>& bp) {
    const Ctx& ctx = bp.graded.at(0).ctx;
    for (const auto& s : bp.flag.steps)
        if (!(s == Subspace<typename Ctx::F>::leading(bp.ambient(), s.dim(), ctx.f_model())))
            throw PreconditionError("t_coords: flag does not coarsen the standard Borel");
    ParabolicType full;
    full.d = bp.ambient();
    for (int i = 1; i < full.d; ++i) full.I.insert(i);
    return phi_prime_P_exact(bp, standard_parabolic(full, ctx.f_model()));
}

template <class Ctx>
std::vector<typename Ctx::W> t_coords_exact(const NormRep<Ctx>& interior) {
    return t_coords_exact(BoundaryPoint<Ctx>::interior_point(interior));
}

template <class Ctx>
std::vector<double> t_coords(const BoundaryPoint<Ctx>& bp) {
    auto e = t_coords_exact(bp);
    std::vector<double> out;
    for (const auto& w : e) out.push_back(Wops<Ctx>::to_double(w));
    return out;
}

template <class Ctx>
std::vector<double> t_coords(const NormRep<Ctx>& interior) {
    return t_coords(BoundaryPoint<Ctx>::interior_point(interior));
}

template <class Ctx>
ParabolicType parabolic_type_of(const BoundaryPoint<Ctx>& bp) {
    return parabolic_type_of_flag(bp.flag);
}

namespace detail {

// Canonical fiber representative at a non-archimedean place: kill every
// unipotent entry that the fiber bound allows to vanish.
template <class Ctx>
    requires(!Ctx::archimedean)
ChartPoint<Ctx> fiber_reduce(const Ctx& ctx, ChartPoint<Ctx> cp) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    const int d = cp.dim();
    for (int j = 1; j < d; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            if (F::is_zero(cp.g.at(i, j))) continue;
            PosReal bound = PosReal::one();
            bool infinite = false;
            for (int k = i; k < j; ++k) {
                if (cp.t[static_cast<std::size_t>(k)].is_zero()) {
                    infinite = true;
                    break;
                }
                bound = bound.mul(cp.t[static_cast<std::size_t>(k)]);
            }
            PosReal entry = ctx.abs(cp.g.at(i, j));
            if (infinite || entry.mul(bound).cmp(PosReal::one()) <= 0) {
                // column_j -= g_ij * column_i stays in the fiber
                K c = cp.g.at(i, j);
                for (int r = 0; r <= i; ++r) cp.g.at(r, j) = F::sub(cp.g.at(r, j), F::mul(c, cp.g.at(r, i)));
            }
        }
    }
    return cp;
}

}  // namespace detail

template <class Ctx>
SiegelCertificate<Ctx> siegel_member_chart(const Ctx& ctx, ChartPoint<Ctx> cp, const SiegelParams& sp,
                                           double tol = 1e-12) {
    if constexpr (!Ctx::archimedean) cp = detail::fiber_reduce(ctx, cp);
    SiegelCertificate<Ctx> cert;
    cert.chart = cp;
    cert.member = true;
    for (const auto& w : cp.t) {
        double tv = Wops<Ctx>::to_double(w);
        cert.t.push_back(tv);
        if (tv > sp.c1 + tol) {
            cert.member = false;
            cert.reason = "t-coordinate above c1";
        }
    }
    for (int i = 0; i < cp.dim(); ++i)
        for (int j = i + 1; j < cp.dim(); ++j) {
            double h;
            if constexpr (Ctx::archimedean)
                h = FieldOps<typename Ctx::K>::mag(cp.g.at(i, j));
            else
                h = ctx.abs(cp.g.at(i, j)).to_double();
            cert.max_entry = std::max(cert.max_entry, h);
            if (h > sp.height_bound + tol) {
                cert.member = false;
                if (cert.reason.empty()) cert.reason = "unipotent coordinate above the height bound";
            }
        }
    if (sp.c3) {
        for (int i : sp.I) {
            if (i < 1 || i > cp.dim() - 1) throw PreconditionError("siegel: I index out of range");
            if (cert.t[static_cast<std::size_t>(i - 1)] > *sp.c3 + tol) {
                cert.member = false;
                if (cert.reason.empty()) cert.reason = "t-coordinate above c3 on I";
            }
        }
    }
    return cert;
}

template <class Ctx>
SiegelCertificate<Ctx> siegel_member(const NormRep<Ctx>& interior, const SiegelParams& sp) {
    return siegel_member_chart(interior.ctx, chart_section(interior), sp);
}

template <class Ctx>
SiegelCertificate<Ctx> siegel_member(const BoundaryPoint<Ctx>& bp, const SiegelParams& sp) {
    return siegel_member_chart(bp.graded.at(0).ctx, chart_section_boundary(bp), sp);
}

// Lattice reduction of an exact positive-definite Gram matrix: returns the
// integer transform U with G_red = U G U^T size-reduced and Lovasz-reduced
// at parameter delta (Gauss-reduced when d = 2).
Mat<Rat> lll_reduce(const Mat<Rat>& gram, const Rat& delta, Mat<Rat>* gram_out = nullptr);

struct ReductionResult {
    Mat<Rat> gamma;       // integer matrix, class in PGL_d(Z)
    Mat<Rat> chart_g;     // unit upper triangular, entries in [-1/2, 1/2]
    std::vector<Rat> t_sq;  // exact squares of the chart t-coordinates
    std::vector<double> t;
    double c1 = 0;  // certificate bound: 2/sqrt(3) for d = 2, 2/sqrt(4 delta - 1) otherwise
};

// Reduction of the interior point with Gram matrix `gram` into the Siegel
// set S(|entries| <= 1/2; c1): LLL at delta = 0.99, Gauss polish for d = 2,
// then unipotent size reduction of the chart coordinate.
ReductionResult reduce_point(const Mat<Rat>& gram);

// The norm class over the reals attached to a positive-definite Gram matrix.
NormRep<RealCtx> norm_from_gram(const Mat<Rat>& gram);
NormRep<RealCtx> norm_from_gram_d(const Mat<double>& gram);

// e(i, j) exponents of the determinant identity.
Rat e_exponent(int i, int j, int d);

template <class Ctx>
struct LemdetSides {
    typename Ctx::W lhs;
    typename Ctx::W rhs;
    bool equal = false;
};

// Both sides of the determinant identity for g preserving V' = <e_1..e_i>.
template <class Ctx>
LemdetSides<Ctx> lemdet_check(const Ctx& ctx, const Mat<typename Ctx::K>& g, const NormRep<Ctx>& x, int i) {
    using K = typename Ctx::K;
    const int d = x.ambient();
    if (i < 1 || i > d - 1) throw PreconditionError("lemdet: index out of range");
    for (int r = i; r < d; ++r)
        for (int c = 0; c < i; ++c)
            if (!FieldOps<K>::is_zero(g.at(r, c))) throw PreconditionError("lemdet: g does not preserve V'");

    // The identity is stated for the ratio convention with
    // t_j(gx)/t_j(x) = |a_j a_{j+1}^{-1}| on diagonal g, which is the
    // reciprocal of the phi'-equivariance ratio; hence x over gx here.
    auto tx = t_coords_exact(x);
    auto tgx = t_coords_exact(norm_act(g, x));
    auto lhs = Wops<Ctx>::one();
    for (int j = 1; j <= d - 1; ++j) {
        auto ratio = Wops<Ctx>::div(tx[static_cast<std::size_t>(j - 1)], tgx[static_cast<std::size_t>(j - 1)]);
        lhs = Wops<Ctx>::mul(lhs, Wops<Ctx>::pow(ratio, e_exponent(i, j, d)));
    }

    Mat<K> top(i, i, ctx.k_model());
    for (int r = 0; r < i; ++r)
        for (int c = 0; c < i; ++c) top.at(r, c) = g.at(r, c);
    Mat<K> bot(d - i, d - i, ctx.k_model());
    for (int r = i; r < d; ++r)
        for (int c = i; c < d; ++c) bot.at(r - i, c - i) = g.at(r, c);
    auto rhs = Wops<Ctx>::div(Wops<Ctx>::pow(ctx.abs(mat_det(top)), make_rat(d - i, i)),
                              ctx.abs(mat_det(bot)));

    LemdetSides<Ctx> out{lhs, rhs, false};
    if constexpr (Ctx::archimedean) {
        out.equal = std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs));
    } else {
        out.equal = lhs.eq(rhs);
    }
    return out;
}

}  // namespace normgeom
