#pragma once

#include "normgeom/decomp.hpp"

namespace normgeom {

// Point of the rational partial compactification: an F-rational flag
// together with one norm class per graded piece. graded[i] is a square
// presentation of dimension dim(V_i/V_{i-1}) in the coordinates of
// quotient_basis(V_i, V_{i-1}); interior points carry the trivial flag and
// a single class on V.
template <class Ctx>
struct BoundaryPoint {
    using F = typename Ctx::F;

    Flag<F> flag;
    std::vector<NormRep<Ctx>> graded;

    int ambient() const { return flag.ambient; }
    bool interior() const { return flag.num_steps() == 0; }

    void validate() const {
        flag.validate();
        if (static_cast<int>(graded.size()) != flag.num_graded())
            throw PreconditionError("boundary point: graded length mismatch");
        const Ctx& ctx = graded.at(0).ctx;
        for (int i = 0; i < flag.num_graded(); ++i) {
            int di = flag.step(i, ctx.f_model()).dim() - flag.step(i - 1, ctx.f_model()).dim();
            if (graded[static_cast<std::size_t>(i)].dim() != di ||
                graded[static_cast<std::size_t>(i)].ambient() != di)
                throw PreconditionError("boundary point: graded class dimension mismatch");
        }
    }

    static BoundaryPoint interior_point(NormRep<Ctx> cls) {
        BoundaryPoint bp;
        bp.flag.ambient = cls.ambient();
        bp.graded.push_back(std::move(cls));
        return bp;
    }
};

// (W, class on W), the flat form of a boundary point. The class is presented
// in the coordinates of W's echelon basis.
template <class Ctx>
struct FlatPoint {
    Subspace<typename Ctx::F> w;
    NormRep<Ctx> cls;
};

// Boundary point plus a splitting of the flag filtration, stored as the
// d x d matrix whose column block i lifts quotient_basis(V_i, V_{i-1}).
template <class Ctx>
struct SharpPoint {
    BoundaryPoint<Ctx> bp;
    Mat<typename Ctx::K> splitting;

    void validate() const {
        using F = typename Ctx::F;
        bp.validate();
        const Ctx& ctx = bp.graded.at(0).ctx;
        int col = 0;
        for (int i = 0; i < bp.flag.num_graded(); ++i) {
            Subspace<F> vi = bp.flag.step(i, ctx.f_model());
            Subspace<F> vprev = bp.flag.step(i - 1, ctx.f_model());
            auto qb = quotient_basis(vi, vprev);
            Mat<typename Ctx::K> viemb = embed_mat(ctx, mat_transpose(vi.basis));
            for (std::size_t k = 0; k < qb.size(); ++k, ++col) {
                auto lift = splitting.col(col);
                if (!mat_solve(viemb, lift)) throw PreconditionError("sharp point: lift not inside V_i");
                // lift - qb[k] must lie in V_{i-1}
                auto target = embed_vec(ctx, qb[k]);
                std::vector<typename Ctx::K> diff(lift.size());
                for (std::size_t l = 0; l < lift.size(); ++l)
                    diff[l] = FieldOps<typename Ctx::K>::sub(lift[l], target[l]);
                if (vprev.is_zero()) {
                    for (auto& x : diff)
                        if (!FieldOps<typename Ctx::K>::is_zero(x))
                            throw PreconditionError("sharp point: lift does not project to the identity");
                } else {
                    Mat<typename Ctx::K> pe = embed_mat(ctx, mat_transpose(vprev.basis));
                    if (!mat_solve(pe, diff))
                        throw PreconditionError("sharp point: lift does not project to the identity");
                }
            }
        }
    }
};

// Chart datum (g, t): g unipotent upper triangular over F_v, t nonnegative.
// The zero set of t determines a standard parabolic type.
template <class Ctx>
struct ChartPoint {
    Mat<typename Ctx::K> g;
    std::vector<typename Ctx::W> t;

    int dim() const { return g.rows; }

    void validate() const {
        using K = typename Ctx::K;
        if (g.rows != g.cols) throw PreconditionError("chart: non-square g");
        if (static_cast<int>(t.size()) != g.rows - 1) throw PreconditionError("chart: t length mismatch");
        for (int i = 0; i < g.rows; ++i)
            for (int j = 0; j <= i; ++j) {
                bool ok = i == j ? g.at(i, j) == FieldOps<K>::one(g.model())
                                 : FieldOps<K>::is_zero(g.at(i, j));
                if (!ok) throw PreconditionError("chart: g not unipotent upper triangular");
            }
    }

    std::set<int> zero_set() const {  // 1-based positions with t = 0
        std::set<int> s;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (Wops<Ctx>::is_zero(t[k])) s.insert(static_cast<int>(k) + 1);
        return s;
    }
};

template <class Ctx>
bool class_eq(const BoundaryPoint<Ctx>& a, const BoundaryPoint<Ctx>& b, double tol = 1e-9) {
    if (!(a.flag == b.flag)) return false;
    for (std::size_t i = 0; i < a.graded.size(); ++i)
        if (!class_eq(a.graded[i], b.graded[i], tol)) return false;
    return true;
}

template <class Ctx>
bool class_eq(const FlatPoint<Ctx>& a, const FlatPoint<Ctx>& b, double tol = 1e-9) {
    return a.w == b.w && class_eq(a.cls, b.cls, tol);
}

// ---------------------------------------------------------------------------
// Chart maps

// (g, t) -> g(P, mu): flag from the zero positions of t, block weights
// r_j = prod of inverse t's inside the block, classes transported by the
// diagonal blocks of g.
template <class Ctx>
BoundaryPoint<Ctx> chart_point_to_boundary(const Ctx& ctx, const ChartPoint<Ctx>& cp) {
    using K = typename Ctx::K;
    cp.validate();
    const int d = cp.dim();
    auto zeros = cp.zero_set();
    std::vector<int> bounds;  // c(0) < ... < c(m-1), then d
    for (int z : zeros) bounds.push_back(z);
    bounds.push_back(d);

    BoundaryPoint<Ctx> bp;
    bp.flag.ambient = d;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        bp.flag.steps.push_back(Subspace<typename Ctx::F>::leading(d, bounds[i], ctx.f_model()));

    int lo = 0;
    for (int hi : bounds) {
        NormRep<Ctx> rep;
        rep.ctx = ctx;
        int len = hi - lo;
        rep.basis = Mat<K>(len, len, ctx.k_model());
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j) rep.basis.at(i, j) = cp.g.at(lo + i, lo + j);
        rep.weights.assign(static_cast<std::size_t>(len), Wops<Ctx>::one());
        auto r = Wops<Ctx>::one();
        for (int j = 1; j < len; ++j) {
            r = Wops<Ctx>::div(r, cp.t[static_cast<std::size_t>(lo + j - 1)]);
            rep.weights[static_cast<std::size_t>(j)] = r;
        }
        bp.graded.push_back(std::move(rep));
        lo = hi;
    }
    return bp;
}

// Fiber relation of the non-archimedean chart: equal t and the entrywise
// bound |(g^-1 g')_{ij}| <= (prod_{i<=k<j} t_k)^{-1}, with 0^{-1} read as
// infinity.
template <class Ctx>
bool chart_fiber_eq(const Ctx& ctx, const ChartPoint<Ctx>& a, const ChartPoint<Ctx>& b) {
    static_assert(!Ctx::archimedean, "fiber relation is stated for non-archimedean places");
    a.validate();
    b.validate();
    if (a.dim() != b.dim()) throw PreconditionError("chart: dimension mismatch");
    for (std::size_t k = 0; k < a.t.size(); ++k)
        if (!a.t[k].eq(b.t[k])) return false;
    Mat<typename Ctx::K> u = mat_mul(mat_inverse(a.g), b.g);
    for (int i = 0; i < u.rows; ++i)
        for (int j = i + 1; j < u.cols; ++j) {
            PosReal prod = PosReal::one();
            bool infinite = false;
            for (int k = i; k < j; ++k) {
                if (a.t[static_cast<std::size_t>(k)].is_zero()) {
                    infinite = true;
                    break;
                }
                prod = prod.mul(a.t[static_cast<std::size_t>(k)]);
            }
            if (infinite) continue;
            PosReal entry = ctx.abs(u.at(i, j));
            if (entry.mul(prod).cmp(PosReal::one()) > 0) return false;
        }
    return true;
}

namespace detail {

// Adapted presentation of mu in unipotent echelon form: mu = u mu^{(r)} with
// u unit upper triangular, by the attained-distance construction: column i
// is the lift of e_i minimizing mu over e_i + <e_1..e_{i-1}>.
template <class Ctx>
    requires(!Ctx::archimedean)
void triangular_presentation(const NormRep<Ctx>& mu, Mat<typename Ctx::K>& u_out,
                             std::vector<typename Ctx::W>& r_out) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    const Ctx& ctx = mu.ctx;
    const int d = mu.ambient();
    if (mu.dim() != d) throw PreconditionError("chart section: not a norm on the full space");
    Mat<K> binv = mat_inverse(mu.basis);

    u_out = Mat<K>::identity(d, ctx.k_model());
    r_out.assign(static_cast<std::size_t>(d), Wops<Ctx>::zero());

    for (int i = 0; i < d; ++i) {
        // Adapted basis of <e_1..e_i> in mu-coordinates.
        std::vector<std::vector<K>> cols;
        for (int j = 0; j < i; ++j) cols.push_back(binv.col(j));
        std::vector<typename Ctx::W> wts;
        std::vector<std::size_t> pivots;
        if (i > 0) {
            detail::ultrametric_orthogonalize(ctx, mu.weights, cols, wts);
            pivots.resize(cols.size());
            for (std::size_t s = 0; s < cols.size(); ++s) {
                std::size_t piv = cols[s].size();
                PosReal best = PosReal::zero();
                for (std::size_t l = 0; l < cols[s].size(); ++l) {
                    if (F::is_zero(cols[s][l])) continue;
                    PosReal val = mu.weights[l].mul(ctx.abs(cols[s][l]));
                    if (piv == cols[s].size() || best.lt(val)) {
                        best = val;
                        piv = l;
                    }
                }
                pivots[s] = piv;
            }
        }
        // Greedy pivot elimination reaches the distance minimizer.
        std::vector<K> c = binv.col(i);
        for (std::size_t s = 0; s < cols.size(); ++s) {
            std::size_t piv = pivots[s];
            if (F::is_zero(c[piv])) continue;
            K f = F::div(c[piv], cols[s][piv]);
            for (std::size_t l = 0; l < c.size(); ++l) c[l] = F::sub(c[l], F::mul(f, cols[s][l]));
            c[piv] = F::zero(ctx.k_model());
            // Track the change of e-coordinates: subtracting f * (column s in
            // mu-coords) subtracts f * (that vector in e-coords).
            std::vector<K> amb = mat_apply(mu.basis, cols[s]);
            for (int l = 0; l < d; ++l) u_out.at(l, i) = F::sub(u_out.at(l, i), F::mul(f, amb[static_cast<std::size_t>(l)]));
        }
        PosReal best = PosReal::zero();
        for (std::size_t l = 0; l < c.size(); ++l)
            if (!F::is_zero(c[l])) best = pr_max(best, mu.weights[l].mul(ctx.abs(c[l])));
        if (best.is_zero()) throw PreconditionError("chart section: degenerate norm");
        r_out[static_cast<std::size_t>(i)] = best;
    }
}

}  // namespace detail

// Some chart preimage of an interior class: all t positive and
// chart_point_to_boundary(section) class-equal to the input.
template <class Ctx>
ChartPoint<Ctx> chart_section(const NormRep<Ctx>& mu) {
    using K = typename Ctx::K;
    const Ctx& ctx = mu.ctx;
    const int d = mu.ambient();
    if (!mu.is_norm() || mu.dim() != d) throw PreconditionError("chart section: interior class required");
    ChartPoint<Ctx> cp;
    if constexpr (Ctx::archimedean) {
        Mat<K> m = mu.basis;
        for (int j = 0; j < d; ++j) {
            double w = mu.weights[static_cast<std::size_t>(j)];
            double scale = Ctx::kind == PlaceKind::real ? 1.0 / w : 1.0 / std::sqrt(w);
            for (int i = 0; i < d; ++i) m.at(i, j) = m.at(i, j) * scale;
        }
        auto tri = iwasawa(ctx, m);
        cp.g = tri.u;
        cp.t.assign(tri.t.begin(), tri.t.end());
    } else {
        std::vector<typename Ctx::W> r;
        detail::triangular_presentation(mu, cp.g, r);
        cp.t.resize(static_cast<std::size_t>(d - 1));
        for (int j = 0; j + 1 < d; ++j)
            cp.t[static_cast<std::size_t>(j)] =
                r[static_cast<std::size_t>(j)].div(r[static_cast<std::size_t>(j + 1)]);
    }
    return cp;
}

// Chart datum of a boundary point whose flag is standard: block sections
// assembled block-diagonally, zeros of t at the flag dimensions.
template <class Ctx>
ChartPoint<Ctx> chart_section_boundary(const BoundaryPoint<Ctx>& bp) {
    using K = typename Ctx::K;
    const Ctx& ctx = bp.graded.at(0).ctx;
    const int d = bp.ambient();
    for (int i = 0; i < bp.flag.num_steps(); ++i) {
        const auto& s = bp.flag.steps[static_cast<std::size_t>(i)];
        if (!(s == Subspace<typename Ctx::F>::leading(d, s.dim(), ctx.f_model())))
            throw PreconditionError("chart section: flag is not standard");
    }
    ChartPoint<Ctx> cp;
    cp.g = Mat<K>::identity(d, ctx.k_model());
    cp.t.assign(static_cast<std::size_t>(d - 1), Wops<Ctx>::zero());
    int lo = 0;
    for (int i = 0; i < bp.flag.num_graded(); ++i) {
        int hi = i < bp.flag.num_steps() ? bp.flag.steps[static_cast<std::size_t>(i)].dim() : d;
        ChartPoint<Ctx> blk = chart_section(bp.graded[static_cast<std::size_t>(i)]);
        for (int a = 0; a < hi - lo; ++a)
            for (int b = 0; b < hi - lo; ++b) cp.g.at(lo + a, lo + b) = blk.g.at(a, b);
        for (int a = 0; a + 1 < hi - lo; ++a) cp.t[static_cast<std::size_t>(lo + a)] = blk.t[static_cast<std::size_t>(a)];
        // boundary position (hi) keeps t = 0
        lo = hi;
    }
    return cp;
}

// ---------------------------------------------------------------------------
// Structural maps

template <class Ctx>
FlatPoint<Ctx> to_flat(const BoundaryPoint<Ctx>& bp) {
    const Ctx& ctx = bp.graded.at(0).ctx;
    FlatPoint<Ctx> fp;
    fp.w = bp.flag.step(0, ctx.f_model());
    fp.cls = bp.graded.at(0);
    return fp;
}

// The second description of a flat point: the class of the semi-norm
// mu* o (V* -> W*) on the ambient dual space. The returned presentation is
// square of dimension d with zero weights on the annihilator of W.
template <class Ctx>
NormRep<Ctx> flat_seminorm(const FlatPoint<Ctx>& fp) {
    using K = typename Ctx::K;
    using F = typename Ctx::F;
    const Ctx& ctx = fp.cls.ctx;
    const int d = fp.w.ambient;
    const int k = fp.w.dim();
    if (k == 0) throw PreconditionError("flat point: zero subspace");

    NormRep<Ctx> dual_w = norm_dual(fp.cls);  // on W*, coordinates dual to the echelon basis

    // Restriction V* -> W* in coordinates: phi |-> (phi(w_1), ..., phi(w_k)).
    Mat<K> proj = embed_mat(ctx, fp.w.basis);  // k x d
    NormRep<Ctx> out;
    out.ctx = ctx;
    out.basis = Mat<K>(d, d, ctx.k_model());
    for (int j = 0; j < k; ++j) {
        auto sol = mat_solve(proj, dual_w.basis.col(j));
        if (!sol) throw PreconditionError("flat point: dual basis not liftable");
        out.basis.set_col(j, *sol);
        out.weights.push_back(dual_w.weights[static_cast<std::size_t>(j)]);
    }
    Mat<F> ann_rows = fp.w.basis;  // annihilator = nullspace of the restriction
    auto ann = mat_nullspace(ann_rows);
    if (static_cast<int>(ann.size()) != d - k) throw PreconditionError("flat point: annihilator rank mismatch");
    for (int j = 0; j < d - k; ++j) {
        out.basis.set_col(k + j, embed_vec(ctx, ann[static_cast<std::size_t>(j)]));
        out.weights.push_back(Wops<Ctx>::zero());
    }
    return out;
}

namespace detail {

// Expresses v (ambient, over F) in the quotient V_i/V_{i-1} using the given
// coordinate vectors (ambient representatives); errors if v is outside V_i.
template <class F>
std::vector<F> quotient_coords_of(const std::vector<std::vector<F>>& coord_basis,
                                  const Subspace<F>& inner, const std::vector<F>& v, const F& model) {
    const int amb = static_cast<int>(v.size());
    const int r = static_cast<int>(coord_basis.size());
    Mat<F> sys(amb, r + inner.dim(), model);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < amb; ++i) sys.at(i, j) = coord_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    for (int j = 0; j < inner.dim(); ++j)
        for (int i = 0; i < amb; ++i) sys.at(i, r + j) = inner.basis.at(j, i);
    auto sol = mat_solve(sys, v);
    if (!sol) throw PreconditionError("quotient: vector outside the subspace");
    return std::vector<F>(sol->begin(), sol->begin() + r);
}

}  // namespace detail

// The graded classes of bp relative to a finer flag P: each graded piece of
// P receives the norm induced on it as a subquotient of the enclosing graded
// piece of bp, in the quotient_basis(V_i, V_{i-1}) coordinates.
template <class Ctx>
std::vector<NormRep<Ctx>> phi_P(const BoundaryPoint<Ctx>& bp, const Flag<typename Ctx::F>& p) {
    using F = typename Ctx::F;
    using K = typename Ctx::K;
    const Ctx& ctx = bp.graded.at(0).ctx;
    if (!bp.flag.coarsens(p)) throw PreconditionError("phi: flags not nested");

    std::vector<NormRep<Ctx>> out;
    for (int i = 0; i < p.num_graded(); ++i) {
        Subspace<F> vi = p.step(i, ctx.f_model());
        Subspace<F> vprev = p.step(i - 1, ctx.f_model());
        // Enclosing graded piece of bp.
        int j = 0;
        while (!bp.flag.step(j, ctx.f_model()).contains(vi)) ++j;
        Subspace<F> wj = bp.flag.step(j, ctx.f_model());
        Subspace<F> wprev = bp.flag.step(j - 1, ctx.f_model());

        auto qb_outer = quotient_basis(wj, wprev);
        int s = static_cast<int>(qb_outer.size());
        // Images of V_i and V_{i-1} inside W_j / W_{j-1}.
        auto project = [&](const Subspace<F>& sub) {
            std::vector<std::vector<F>> vecs;
            for (int r = 0; r < sub.basis.rows; ++r) {
                std::vector<F> v(static_cast<std::size_t>(sub.ambient));
                for (int c = 0; c < sub.ambient; ++c) v[static_cast<std::size_t>(c)] = sub.basis.at(r, c);
                vecs.push_back(detail::quotient_coords_of(qb_outer, wprev, v, ctx.f_model()));
            }
            return Subspace<F>::from_vectors(vecs, s, ctx.f_model());
        };
        Subspace<F> hp = project(vi);
        Subspace<F> hpp = vprev.dim() > wprev.dim() ? project(vprev) : Subspace<F>::zero(s, ctx.f_model());

        NormRep<Ctx> induced = induce_subquotient(bp.graded[static_cast<std::size_t>(j)], hp, hpp);

        // Transition from the canonical quotient_basis(V_i, V_{i-1})
        // coordinates into the coordinates the induced rep is expressed in.
        auto qb_target = quotient_basis(vi, vprev);
        auto qb_inner = quotient_basis(hp, hpp);
        int r = static_cast<int>(qb_target.size());
        Mat<F> t(r, r, ctx.f_model());
        for (int col = 0; col < r; ++col) {
            auto in_outer = detail::quotient_coords_of(qb_outer, wprev, qb_target[static_cast<std::size_t>(col)], ctx.f_model());
            auto in_inner = detail::quotient_coords_of(qb_inner, hpp, in_outer, ctx.f_model());
            for (int row = 0; row < r; ++row) t.at(row, col) = in_inner[static_cast<std::size_t>(row)];
        }
        Mat<K> tk = embed_mat(ctx, t);
        NormRep<Ctx> rep = induced;
        rep.basis = mat_mul(mat_inverse(tk), induced.basis);
        out.push_back(std::move(rep));
    }
    return out;
}

// t-coordinates of bp relative to P, exact weight scalars. e_bases, when
// given, holds one reference basis per graded piece of P in the canonical
// quotient coordinates; defaults to those coordinates themselves.
template <class Ctx>
std::vector<typename Ctx::W> phi_prime_P_exact(const BoundaryPoint<Ctx>& bp, const Flag<typename Ctx::F>& p,
                                               const std::vector<Mat<typename Ctx::K>>* e_bases = nullptr) {
    using F = typename Ctx::F;
    const Ctx& ctx = bp.graded.at(0).ctx;
    if (!bp.flag.coarsens(p)) throw PreconditionError("phi': flags not nested");
    const int m = p.num_steps();
    auto graded_of_p = phi_P(bp, p);

    std::vector<typename Ctx::W> t;
    for (int i = 1; i <= m; ++i) {
        Subspace<F> vim1 = p.step(i - 1, ctx.f_model());
        bool is_step = false;
        for (const auto& st : bp.flag.steps)
            if (st == vim1) is_step = true;
        if (is_step) {
            t.push_back(Wops<Ctx>::zero());
            continue;
        }
        const auto& lower = graded_of_p[static_cast<std::size_t>(i - 1)];
        const auto& upper = graded_of_p[static_cast<std::size_t>(i)];
        auto e_low = e_bases ? (*e_bases)[static_cast<std::size_t>(i - 1)]
                             : Mat<typename Ctx::K>::identity(lower.dim(), ctx.k_model());
        auto e_up = e_bases ? (*e_bases)[static_cast<std::size_t>(i)]
                            : Mat<typename Ctx::K>::identity(upper.dim(), ctx.k_model());
        auto low_rel = abs_rel(lower, e_low);
        auto up_rel = abs_rel(upper, e_up);
        auto ti = Wops<Ctx>::mul(Wops<Ctx>::pow(low_rel, make_rat(1, lower.dim())),
                                 Wops<Ctx>::pow(up_rel, make_rat(-1, upper.dim())));
        t.push_back(ti);
    }
    return t;
}

template <class Ctx>
std::vector<double> phi_prime_P(const BoundaryPoint<Ctx>& bp, const Flag<typename Ctx::F>& p,
                                const std::vector<Mat<typename Ctx::K>>* e_bases = nullptr) {
    auto exact = phi_prime_P_exact(bp, p, e_bases);
    std::vector<double> out;
    out.reserve(exact.size());
    for (const auto& w : exact) out.push_back(Wops<Ctx>::to_double(w));
    return out;
}

// ---------------------------------------------------------------------------
// xi and xi*

namespace detail {

struct BlockLayout {
    std::vector<int> bounds;  // c(0) < ... < c(m-1), c(m) = d
    int d = 0;

    int blocks() const { return static_cast<int>(bounds.size()); }
    int lo(int i) const { return i == 0 ? 0 : bounds[static_cast<std::size_t>(i - 1)]; }
    int hi(int i) const { return bounds[static_cast<std::size_t>(i)]; }
    int dim(int i) const { return hi(i) - lo(i); }
};

template <class F>
BlockLayout standard_layout(const Flag<F>& p) {
    BlockLayout l;
    l.d = p.ambient;
    for (const auto& s : p.steps) l.bounds.push_back(s.dim());
    l.bounds.push_back(p.ambient);
    return l;
}

template <class F>
void require_standard_flag(const Flag<F>& p, const F& model) {
    for (const auto& s : p.steps)
        if (!(s == Subspace<F>::leading(p.ambient, s.dim(), model)))
            throw PreconditionError("xi: flag is not standard");
}

template <class Ctx>
void require_unipotent_radical(const Mat<typename Ctx::K>& g, const BlockLayout& l, const Ctx& ctx) {
    using K = typename Ctx::K;
    if (g.rows != l.d || g.cols != l.d) throw PreconditionError("xi: dimension mismatch");
    for (int bi = 0; bi < l.blocks(); ++bi)
        for (int i = l.lo(bi); i < l.hi(bi); ++i)
            for (int j = 0; j < l.d; ++j) {
                if (j >= l.lo(bi) && j < l.hi(bi)) {
                    bool ok = i == j ? g.at(i, j) == FieldOps<K>::one(ctx.k_model())
                                     : FieldOps<K>::is_zero(g.at(i, j));
                    if (!ok) throw PreconditionError("xi: g not in the unipotent radical");
                } else if (j < l.lo(bi)) {
                    if (!FieldOps<K>::is_zero(g.at(i, j)))
                        throw PreconditionError("xi: g not in the unipotent radical");
                }
            }
}

}  // namespace detail

// xi*(g, (mu_i), (t_i)): flag from the zero t's, block norms combining the
// determinant-normalized mu_j with relative weights given by the inverse
// separating t's, then transported by g.
template <class Ctx>
BoundaryPoint<Ctx> xi_star(const Ctx& ctx, const Flag<typename Ctx::F>& p,
                           const Mat<typename Ctx::K>& g, const std::vector<NormRep<Ctx>>& mus,
                           const std::vector<typename Ctx::W>& t) {
    using K = typename Ctx::K;
    using F = typename Ctx::F;
    detail::require_standard_flag(p, ctx.f_model());
    auto layout = detail::standard_layout(p);
    detail::require_unipotent_radical(g, layout, ctx);
    const int m = p.num_steps();
    if (static_cast<int>(mus.size()) != m + 1 || static_cast<int>(t.size()) != m)
        throw PreconditionError("xi: component count mismatch");

    // Determinant-normalized representatives.
    std::vector<NormRep<Ctx>> norm_mus;
    for (int j = 0; j <= m; ++j) {
        if (mus[static_cast<std::size_t>(j)].dim() != layout.dim(j))
            throw PreconditionError("xi: graded class dimension mismatch");
        norm_mus.push_back(normalize_abs_rel(mus[static_cast<std::size_t>(j)],
                                             Mat<K>::identity(layout.dim(j), ctx.k_model())));
    }

    // New flag: boundaries where t vanishes.
    std::vector<int> jbounds;  // indices j >= 1 whose separating t_j is zero
    for (int j = 1; j <= m; ++j)
        if (Wops<Ctx>::is_zero(t[static_cast<std::size_t>(j - 1)])) jbounds.push_back(j);
    jbounds.push_back(m + 1);

    BoundaryPoint<Ctx> bp;
    bp.flag.ambient = layout.d;
    std::vector<std::pair<int, int>> groups;  // [jlo, jhi) runs of merged blocks
    int jlo = 0;
    for (int jhi : jbounds) {
        groups.emplace_back(jlo, jhi);
        if (jhi <= m) bp.flag.steps.push_back(Subspace<F>::leading(layout.d, layout.lo(jhi), ctx.f_model()));
        jlo = jhi;
    }

    for (auto [glo, ghi] : groups) {
        int dim = (ghi <= m ? layout.lo(ghi) : layout.d) - layout.lo(glo);
        NormRep<Ctx> rep;
        rep.ctx = ctx;
        rep.basis = Mat<K>(dim, dim, ctx.k_model());
        for (int i = 0; i < dim; ++i) rep.basis.at(i, i) = FieldOps<K>::one(ctx.k_model());
        rep.weights.assign(static_cast<std::size_t>(dim), Wops<Ctx>::one());
        auto r = Wops<Ctx>::one();
        int off = 0;
        for (int j = glo; j < ghi; ++j) {
            if (j > glo) r = Wops<Ctx>::div(r, t[static_cast<std::size_t>(j - 1)]);
            const auto& mj = norm_mus[static_cast<std::size_t>(j)];
            for (int a = 0; a < mj.dim(); ++a) {
                for (int b = 0; b < mj.dim(); ++b) rep.basis.at(off + a, off + b) = mj.basis.at(a, b);
                rep.weights[static_cast<std::size_t>(off + a)] =
                    Wops<Ctx>::mul(r, mj.weights[static_cast<std::size_t>(a)]);
            }
            off += mj.dim();
        }
        bp.graded.push_back(std::move(rep));
    }

    // Transport by g: the flag is g-stable, classes move by the diagonal
    // blocks of g relative to the coarser flag.
    int lo = 0;
    for (std::size_t gi = 0; gi < bp.graded.size(); ++gi) {
        int dim = bp.graded[gi].dim();
        Mat<K> blk(dim, dim, ctx.k_model());
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) blk.at(a, b) = g.at(lo + a, lo + b);
        bp.graded[gi] = norm_act(blk, bp.graded[gi]);
        lo += dim;
    }
    return bp;
}

// Chart coordinates of the class mu_i inside its block.
template <class Ctx>
std::vector<typename Ctx::W> block_chart_coords(const NormRep<Ctx>& mu) {
    return chart_section(mu).t;
}

// The correction t -> t' making xi = xi* o (id, id, correction).
template <class Ctx>
std::vector<typename Ctx::W> xixi_correction(const Ctx& ctx, const Flag<typename Ctx::F>& p,
                                             const std::vector<NormRep<Ctx>>& mus,
                                             const std::vector<typename Ctx::W>& t) {
    detail::require_standard_flag(p, ctx.f_model());
    auto layout = detail::standard_layout(p);
    const int m = p.num_steps();
    if (static_cast<int>(mus.size()) != m + 1 || static_cast<int>(t.size()) != m)
        throw PreconditionError("xi: component count mismatch");

    std::vector<typename Ctx::W> out = t;
    for (int i = 1; i <= m; ++i) {
        auto factor = Wops<Ctx>::one();
        // Interior chart coordinates of the block below the boundary...
        {
            const auto& mu_low = mus[static_cast<std::size_t>(i - 1)];
            int dlow = layout.dim(i - 1);
            if (dlow > 1) {
                auto coords = block_chart_coords(mu_low);
                for (int local = 1; local < dlow; ++local) {
                    Rat expo = make_rat(local, dlow);
                    factor = Wops<Ctx>::mul(factor,
                                            Wops<Ctx>::pow(coords[static_cast<std::size_t>(local - 1)], expo));
                }
            }
        }
        // ...and of the block above it.
        {
            const auto& mu_up = mus[static_cast<std::size_t>(i)];
            int dup = layout.dim(i);
            if (dup > 1) {
                auto coords = block_chart_coords(mu_up);
                for (int local = 1; local < dup; ++local) {
                    Rat expo = make_rat(dup - local, dup);
                    factor = Wops<Ctx>::mul(factor,
                                            Wops<Ctx>::pow(coords[static_cast<std::size_t>(local - 1)], expo));
                }
            }
        }
        out[static_cast<std::size_t>(i - 1)] = Wops<Ctx>::mul(t[static_cast<std::size_t>(i - 1)], factor);
    }
    return out;
}

// xi(g, mu, t): the chart-assembled map; block sections glued along the
// given boundary t's.
template <class Ctx>
BoundaryPoint<Ctx> xi(const Ctx& ctx, const Flag<typename Ctx::F>& p, const Mat<typename Ctx::K>& g,
                      const std::vector<NormRep<Ctx>>& mus, const std::vector<typename Ctx::W>& t) {
    using K = typename Ctx::K;
    detail::require_standard_flag(p, ctx.f_model());
    auto layout = detail::standard_layout(p);
    detail::require_unipotent_radical(g, layout, ctx);
    const int m = p.num_steps();
    if (static_cast<int>(mus.size()) != m + 1 || static_cast<int>(t.size()) != m)
        throw PreconditionError("xi: component count mismatch");

    ChartPoint<Ctx> cp;
    cp.g = Mat<K>::identity(layout.d, ctx.k_model());
    cp.t.assign(static_cast<std::size_t>(layout.d - 1), Wops<Ctx>::zero());
    for (int j = 0; j <= m; ++j) {
        ChartPoint<Ctx> blk = chart_section(mus[static_cast<std::size_t>(j)]);
        int lo = layout.lo(j);
        for (int a = 0; a < layout.dim(j); ++a)
            for (int b = 0; b < layout.dim(j); ++b) cp.g.at(lo + a, lo + b) = blk.g.at(a, b);
        for (int a = 0; a + 1 < layout.dim(j); ++a)
            cp.t[static_cast<std::size_t>(lo + a)] = blk.t[static_cast<std::size_t>(a)];
        if (j >= 1) cp.t[static_cast<std::size_t>(lo - 1)] = t[static_cast<std::size_t>(j - 1)];
    }
    cp.g = mat_mul(g, cp.g);
    return chart_point_to_boundary(ctx, cp);
}

// ---------------------------------------------------------------------------
// Global action

template <class Ctx>
BoundaryPoint<Ctx> act_global(const Mat<typename Ctx::F>& gamma, const BoundaryPoint<Ctx>& bp) {
    using F = typename Ctx::F;
    using K = typename Ctx::K;
    const Ctx& ctx = bp.graded.at(0).ctx;
    if (!mat_inverse_opt(gamma)) throw PreconditionError("act: singular matrix");

    BoundaryPoint<Ctx> out;
    out.flag.ambient = bp.flag.ambient;
    for (const auto& s : bp.flag.steps) out.flag.steps.push_back(subspace_image(gamma, s));

    for (int i = 0; i < bp.flag.num_graded(); ++i) {
        Subspace<F> vi = bp.flag.step(i, ctx.f_model());
        Subspace<F> vprev = bp.flag.step(i - 1, ctx.f_model());
        Subspace<F> wi = out.flag.step(i, ctx.f_model());
        Subspace<F> wprev = out.flag.step(i - 1, ctx.f_model());
        auto qb_src = quotient_basis(vi, vprev);
        auto qb_dst = quotient_basis(wi, wprev);
        int r = static_cast<int>(qb_src.size());
        Mat<F> t(r, r, ctx.f_model());
        for (int col = 0; col < r; ++col) {
            auto moved = mat_apply(gamma, qb_src[static_cast<std::size_t>(col)]);
            auto coords = detail::quotient_coords_of(qb_dst, wprev, moved, ctx.f_model());
            for (int row = 0; row < r; ++row) t.at(row, col) = coords[static_cast<std::size_t>(row)];
        }
        Mat<K> tk = embed_mat(ctx, t);
        out.graded.push_back(norm_act(tk, bp.graded[static_cast<std::size_t>(i)]));
    }
    return out;
}

template <class Ctx>
FlatPoint<Ctx> act_global(const Mat<typename Ctx::F>& gamma, const FlatPoint<Ctx>& fp) {
    using F = typename Ctx::F;
    const Ctx& ctx = fp.cls.ctx;
    if (!mat_inverse_opt(gamma)) throw PreconditionError("act: singular matrix");
    FlatPoint<Ctx> out;
    out.w = subspace_image(gamma, fp.w);
    auto qb_src = quotient_basis(fp.w, Subspace<F>::zero(fp.w.ambient, ctx.f_model()));
    auto qb_dst = quotient_basis(out.w, Subspace<F>::zero(fp.w.ambient, ctx.f_model()));
    int r = static_cast<int>(qb_src.size());
    Mat<F> t(r, r, ctx.f_model());
    for (int col = 0; col < r; ++col) {
        auto moved = mat_apply(gamma, qb_src[static_cast<std::size_t>(col)]);
        auto coords = detail::quotient_coords_of(qb_dst, Subspace<F>::zero(fp.w.ambient, ctx.f_model()),
                                                 moved, ctx.f_model());
        for (int row = 0; row < r; ++row) t.at(row, col) = coords[static_cast<std::size_t>(row)];
    }
    out.cls = norm_act(embed_mat(ctx, t), fp.cls);
    return out;
}

template <class Ctx>
SharpPoint<Ctx> act_global(const Mat<typename Ctx::F>& gamma, const SharpPoint<Ctx>& sp) {
    using K = typename Ctx::K;
    const Ctx& ctx = sp.bp.graded.at(0).ctx;
    SharpPoint<Ctx> out;
    out.bp = act_global(gamma, sp.bp);

    // g(alpha, s) = (g alpha, g o s o g^{-1}); in block coordinates the right
    // factor is the inverse of the induced graded transition.
    using F = typename Ctx::F;
    const int d = sp.bp.flag.ambient;
    Mat<K> graded_t(d, d, ctx.k_model());
    int off = 0;
    for (int i = 0; i < sp.bp.flag.num_graded(); ++i) {
        Subspace<F> vi = sp.bp.flag.step(i, ctx.f_model());
        Subspace<F> vprev = sp.bp.flag.step(i - 1, ctx.f_model());
        Subspace<F> wi = out.bp.flag.step(i, ctx.f_model());
        Subspace<F> wprev = out.bp.flag.step(i - 1, ctx.f_model());
        auto qb_src = quotient_basis(vi, vprev);
        auto qb_dst = quotient_basis(wi, wprev);
        int r = static_cast<int>(qb_src.size());
        for (int col = 0; col < r; ++col) {
            auto moved = mat_apply(gamma, qb_src[static_cast<std::size_t>(col)]);
            auto coords = detail::quotient_coords_of(qb_dst, wprev, moved, ctx.f_model());
            for (int row = 0; row < r; ++row) graded_t.at(off + row, off + col) = ctx.embed(coords[static_cast<std::size_t>(row)]);
        }
        off += r;
    }
    Mat<K> gk = embed_mat(ctx, gamma);
    out.splitting = mat_mul(gk, mat_mul(sp.splitting, mat_inverse(graded_t)));
    return out;
}

}  // namespace normgeom
