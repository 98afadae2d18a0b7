#pragma once

#include <string>

#include "normgeom/reduction.hpp"

namespace normgeom {

// Outcome of a desk-scale convergence check. The verdict is decided on a
// finite schedule with a tail window; it is a semi-decision, and the trace
// records the schedule it was decided on.
struct Verdict {
    bool converges = false;
    std::string limit_kind;  // interior | flat-boundary | full-boundary | none
    std::vector<std::string> notes;
    std::vector<std::string> trace_header;
    std::vector<std::vector<double>> trace;  // one row per schedule step

    static constexpr int tail_window = 10;
};

// Default probe set on V*: the dual standard basis plus all 0/1 sums.
template <class Ctx>
std::vector<std::vector<typename Ctx::K>> default_probes(const Ctx& ctx, int d) {
    using K = typename Ctx::K;
    std::vector<std::vector<K>> probes;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<K> v(static_cast<std::size_t>(d), FieldOps<K>::zero(ctx.k_model()));
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) v[static_cast<std::size_t>(i)] = FieldOps<K>::one(ctx.k_model());
        probes.push_back(std::move(v));
    }
    return probes;
}

// Pointwise convergence of the dual norms, rescaled at the first probe where
// the target does not vanish, against the target semi-norm on V*.
template <class Ctx>
Verdict weak_limit_check(const std::vector<NormRep<Ctx>>& seq, const NormRep<Ctx>& target,
                         std::vector<std::vector<typename Ctx::K>> probes = {}, double tol = 1e-9) {
    if (seq.empty()) throw PreconditionError("weak limit: empty sequence");
    const Ctx& ctx = seq.front().ctx;
    const int d = seq.front().ambient();
    if (probes.empty()) probes = default_probes(ctx, d);
    {
        Mat<typename Ctx::K> pm(static_cast<int>(probes.size()), d, ctx.k_model());
        for (std::size_t i = 0; i < probes.size(); ++i)
            for (int j = 0; j < d; ++j) pm.at(static_cast<int>(i), j) = probes[i][static_cast<std::size_t>(j)];
        if (mat_rank(pm) != d) throw PreconditionError("weak limit: probes do not span the dual space");
    }

    std::size_t anchor = probes.size();
    for (std::size_t i = 0; i < probes.size(); ++i)
        if (!Wops<Ctx>::is_zero(norm_eval(target, probes[i]))) {
            anchor = i;
            break;
        }
    if (anchor == probes.size()) throw PreconditionError("weak limit: target vanishes on all probes");

    auto target_anchor = norm_eval(target, probes[anchor]);

    Verdict v;
    v.trace_header.push_back("n");
    for (std::size_t i = 0; i < probes.size(); ++i) v.trace_header.push_back("probe" + std::to_string(i));

    std::vector<double> errs;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        NormRep<Ctx> dual = norm_dual(seq[n]);
        auto anchor_val = norm_eval(dual, probes[anchor]);
        if (Wops<Ctx>::is_zero(anchor_val)) throw PreconditionError("weak limit: sequence vanishes at the anchor probe");
        std::vector<double> row{static_cast<double>(n)};
        double step_err = 0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            double val = Wops<Ctx>::to_double(Wops<Ctx>::div(norm_eval(dual, probes[i]), anchor_val));
            double want = Wops<Ctx>::to_double(Wops<Ctx>::div(norm_eval(target, probes[i]), target_anchor));
            row.push_back(val);
            step_err = std::max(step_err, std::fabs(val - want));
        }
        v.trace.push_back(std::move(row));
        errs.push_back(step_err);
    }

    std::size_t win = std::min<std::size_t>(Verdict::tail_window, errs.size());
    v.converges = true;
    for (std::size_t i = errs.size() - win; i < errs.size(); ++i)
        if (errs[i] > tol) v.converges = false;
    v.limit_kind = v.converges ? (target.is_norm() ? "interior" : "flat-boundary") : "none";
    return v;
}

// Satake convergence of interior classes toward a boundary point: the graded
// classes approach the target's in class distance and the t-coordinates
// approach zero.
template <class Ctx>
Verdict satake_limit_check(const std::vector<NormRep<Ctx>>& seq, const BoundaryPoint<Ctx>& target,
                           double tol = 1e-9) {
    if (seq.empty()) throw PreconditionError("satake limit: empty sequence");
    const Flag<typename Ctx::F>& p = target.flag;

    Verdict v;
    v.trace_header = {"n", "graded_dist", "t_max"};
    std::vector<double> errs;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        auto bp = BoundaryPoint<Ctx>::interior_point(seq[n]);
        auto graded = phi_P(bp, p);
        double dist = 0;
        for (std::size_t i = 0; i < graded.size(); ++i)
            dist = std::max(dist, class_distance(graded[i], target.graded[i]));
        auto t = phi_prime_P(bp, p);
        double tmax = 0;
        for (double x : t) tmax = std::max(tmax, x);
        v.trace.push_back({static_cast<double>(n), dist, tmax});
        errs.push_back(std::max(dist, tmax));
    }
    std::size_t win = std::min<std::size_t>(Verdict::tail_window, errs.size());
    v.converges = true;
    for (std::size_t i = errs.size() - win; i < errs.size(); ++i)
        if (errs[i] > tol) v.converges = false;
    v.limit_kind = v.converges ? (target.interior() ? "interior" : "full-boundary") : "none";
    return v;
}

// ---------------------------------------------------------------------------
// Registered families and demonstrations (non-archimedean forms).

struct NonHausdorffReport {
    PosReal threshold;        // sup of the uniform t below which the images merge
    double threshold_double = 0;
    bool sharp_points_differ = false;
    bool verified = false;  // fiber relation checked at and above the threshold
};

// Merging threshold of the chart points (a, t) and (b, t) for t = (tau,...,
// tau): tau* = min over entries of |(a^{-1} b)_{ij}|^{-1/(j-i)}.
template <class Ctx>
    requires(!Ctx::archimedean)
NonHausdorffReport nonhausdorff_demo(const Ctx& ctx, const Mat<typename Ctx::K>& a,
                                     const Mat<typename Ctx::K>& b) {
    using K = typename Ctx::K;
    if (a == b) throw PreconditionError("nonhausdorff: elements must differ");
    const int d = a.rows;
    Mat<K> u = mat_mul(mat_inverse(a), b);
    bool found = false;
    PosReal best;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (FieldOps<K>::is_zero(u.at(i, j))) continue;
            PosReal bound = ctx.abs(u.at(i, j)).pow(make_rat(-1, j - i));
            if (!found || bound.lt(best)) {
                best = bound;
                found = true;
            }
        }
    NonHausdorffReport rep;
    if (!found) {
        // a and b differ only through entries the fiber ignores at every t.
        rep.threshold = PosReal::zero();
        throw PreconditionError("nonhausdorff: elements equal");
    }
    rep.threshold = best;
    rep.threshold_double = best.to_double();

    auto chart_at = [&](const Mat<K>& g, const PosReal& tau) {
        ChartPoint<Ctx> cp;
        cp.g = g;
        cp.t.assign(static_cast<std::size_t>(d - 1), tau);
        return cp;
    };
    long q = ctx.p;
    PosReal above = best.mul(PosReal::from_int(q));
    rep.verified = chart_fiber_eq(ctx, chart_at(a, best), chart_at(b, best)) &&
                   !chart_fiber_eq(ctx, chart_at(a, above), chart_at(b, above));

    // The sharp points at t = 0 keep the full splitting datum and stay apart.
    rep.sharp_points_differ = !(a == b);
    return rep;
}

// d = 2 neighborhoods of infinity on the upper half-plane.
struct HalfPlanePoint {
    bool infinity = false;
    double x = 0, y = 0;
};

struct PiecewiseLinear {
    std::vector<std::pair<double, double>> pts;  // sorted by x; linear between,
                                                 // extended by the end slopes
    double operator()(double x) const;
};

bool halfplane_member_uc(const HalfPlanePoint& z, double c);
bool halfplane_member_uf(const HalfPlanePoint& z, const PiecewiseLinear& f);

}  // namespace normgeom
