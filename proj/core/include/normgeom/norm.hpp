#pragma once

#include "normgeom/context.hpp"

namespace normgeom {

// A (semi-)norm presented by a basis and a weight vector. Columns of basis
// are the presenting vectors, expressed in the standard coordinates of the
// ambient space; weights are per-column and nonnegative, strictly positive
// for norms. The presentation may be rectangular: ambient x dim with full
// column rank, a norm on the column span.
//
// Values: with coordinates a_i of x in the presenting basis,
//   real:     (sum r_i^2 a_i^2)^(1/2)
//   complex:  sum r_i |a_i|           (normalized absolute value)
//   other:    max r_i |a_i|           (exact)
template <class Ctx>
struct NormRep {
    using K = typename Ctx::K;
    using W = typename Ctx::W;

    Ctx ctx;
    Mat<K> basis;
    std::vector<W> weights;

    int ambient() const { return basis.rows; }
    int dim() const { return basis.cols; }

    bool is_norm() const {
        for (const auto& w : weights)
            if (Wops<Ctx>::is_zero(w)) return false;
        return true;
    }

    void validate() const {
        if (static_cast<int>(weights.size()) != basis.cols)
            throw PreconditionError("norm: weight count does not match basis");
        if (mat_rank(basis) != basis.cols) throw PreconditionError("norm: presenting basis is singular");
    }

    static NormRep standard(Ctx ctx, int d) {
        NormRep r;
        r.ctx = ctx;
        r.basis = Mat<K>::identity(d, ctx.k_model());
        r.weights.assign(static_cast<std::size_t>(d), Wops<Ctx>::one());
        return r;
    }

    static NormRep diagonal(Ctx ctx, std::vector<W> weights) {
        NormRep r;
        r.ctx = ctx;
        r.basis = Mat<K>::identity(static_cast<int>(weights.size()), ctx.k_model());
        r.weights = std::move(weights);
        return r;
    }
};

// A norm class is a rep taken modulo scaling by a positive real constant.
// Reps are never normalized; class comparisons work with cross-ratios.
template <class Ctx>
struct NormClass {
    NormRep<Ctx> rep;
};

template <class Ctx>
std::vector<typename Ctx::K> embed_vec(const Ctx& ctx, const std::vector<typename Ctx::F>& v) {
    std::vector<typename Ctx::K> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(ctx.embed(x));
    return r;
}

template <class Ctx>
Mat<typename Ctx::K> embed_mat(const Ctx& ctx, const Mat<typename Ctx::F>& m) {
    Mat<typename Ctx::K> r(m.rows, m.cols, ctx.k_model());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = ctx.embed(m.at(i, j));
    return r;
}

// Coordinates of x in the presenting basis. Errors when x is outside the
// span (rectangular presentations).
template <class Ctx>
std::vector<typename Ctx::K> norm_coords(const NormRep<Ctx>& mu, const std::vector<typename Ctx::K>& x) {
    auto sol = mat_solve(mu.basis, x);
    if (!sol) throw PreconditionError("norm: vector outside the presented subspace");
    return *sol;
}

template <class Ctx>
typename Ctx::W norm_eval(const NormRep<Ctx>& mu, const std::vector<typename Ctx::K>& x) {
    if (static_cast<int>(x.size()) != mu.ambient()) throw PreconditionError("norm: dimension mismatch in eval");
    auto a = norm_coords(mu, x);
    if constexpr (Ctx::kind == PlaceKind::real) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double t = mu.weights[i] * std::fabs(a[i]);
            s += t * t;
        }
        return std::sqrt(s);
    } else if constexpr (Ctx::kind == PlaceKind::complex_) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += mu.weights[i] * std::norm(a[i]);
        return s;
    } else {
        PosReal best = PosReal::zero();
        for (std::size_t i = 0; i < a.size(); ++i) best = pr_max(best, mu.weights[i].mul(mu.ctx.abs(a[i])));
        return best;
    }
}

// Dual norm on V*: dual basis (inverse transpose) and inverted weights.
template <class Ctx>
NormRep<Ctx> norm_dual(const NormRep<Ctx>& mu) {
    if (mu.ambient() != mu.dim()) throw PreconditionError("dual: presentation is not a norm on the full space");
    if (!mu.is_norm()) throw PreconditionError("dual: not a norm (zero weight)");
    NormRep<Ctx> r;
    r.ctx = mu.ctx;
    r.basis = mat_transpose(mat_inverse(mu.basis));
    r.weights.reserve(mu.weights.size());
    for (const auto& w : mu.weights) r.weights.push_back(Wops<Ctx>::div(Wops<Ctx>::one(), w));
    return r;
}

// g . mu = mu o g^{-1}: transport the presenting basis.
template <class Ctx>
NormRep<Ctx> norm_act(const Mat<typename Ctx::K>& g, const NormRep<Ctx>& mu) {
    if (!mat_inverse_opt(g)) throw PreconditionError("act: singular matrix");
    NormRep<Ctx> r = mu;
    r.basis = mat_mul(g, mu.basis);
    return r;
}

namespace detail {

// Ultrametric orthogonalization of columns given in mu-diagonal coordinates:
// pick the coordinate attaining the max weighted value, eliminate it from
// every other column, repeat. Pivot ties resolve to the smallest index.
template <class Ctx>
void ultrametric_orthogonalize(const Ctx& ctx, const std::vector<typename Ctx::W>& rw,
                               std::vector<std::vector<typename Ctx::K>>& cols,
                               std::vector<typename Ctx::W>& out_weights) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    const std::size_t k = cols.size();
    out_weights.assign(k, Wops<Ctx>::zero());
    for (std::size_t s = 0; s < k; ++s) {
        auto& v = cols[s];
        std::size_t piv = v.size();
        PosReal best = PosReal::zero();
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (F::is_zero(v[j])) continue;
            PosReal val = rw[j].mul(ctx.abs(v[j]));
            if (piv == v.size() || best.lt(val)) {
                best = val;
                piv = j;
            }
        }
        if (piv == v.size()) throw PreconditionError("adapted basis: dependent vectors");
        out_weights[s] = best;
        for (std::size_t t = 0; t < k; ++t) {
            if (t == s || F::is_zero(cols[t][piv])) continue;
            K c = F::div(cols[t][piv], v[piv]);
            for (std::size_t j = 0; j < v.size(); ++j) cols[t][j] = F::sub(cols[t][j], F::mul(c, v[j]));
            cols[t][piv] = F::zero(v[piv]);
        }
    }
}

inline Mat<double> chol_lower(const Mat<double>& g) {
    int n = g.rows;
    Mat<double> l(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g.at(i, j);
            for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            if (i == j) {
                if (s <= 0) throw PreconditionError("cholesky: matrix not positive definite");
                l.at(i, i) = std::sqrt(s);
            } else {
                l.at(i, j) = s / l.at(j, j);
            }
        }
    }
    return l;
}

inline Mat<Cplx> chol_lower(const Mat<Cplx>& g) {
    int n = g.rows;
    Mat<Cplx> l(n, n, Cplx(0, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Cplx s = g.at(i, j);
            for (int k = 0; k < j; ++k) s -= l.at(i, k) * std::conj(l.at(j, k));
            if (i == j) {
                if (s.real() <= 0) throw PreconditionError("cholesky: matrix not positive definite");
                l.at(i, i) = std::sqrt(s.real());
            } else {
                l.at(i, j) = s / l.at(j, j).real();
            }
        }
    }
    return l;
}

}  // namespace detail

// Gram matrix of an archimedean norm rep in the coordinates of its own
// presentation space (square presentations only): real mu(x)^2 = x^T G x,
// complex mu(x) = x^H G x.
template <class Ctx>
    requires(Ctx::archimedean)
Mat<typename Ctx::K> norm_gram(const NormRep<Ctx>& mu) {
    using K = typename Ctx::K;
    if (mu.ambient() != mu.dim()) throw PreconditionError("gram: rectangular presentation");
    Mat<K> binv = mat_inverse(mu.basis);
    Mat<K> d(mu.dim(), mu.dim(), mu.ctx.k_model());
    for (int i = 0; i < mu.dim(); ++i) {
        double w = mu.weights[static_cast<std::size_t>(i)];
        if constexpr (Ctx::kind == PlaceKind::real)
            d.at(i, i) = w * w;
        else
            d.at(i, i) = Cplx(w, 0);
    }
    return mat_mul(mat_conj_transpose(binv), mat_mul(d, binv));
}

// Diagonalizing presentation of the restriction mu|_W. The output basis
// columns lie in W (ambient coordinates).
template <class Ctx>
NormRep<Ctx> adapted_basis(const NormRep<Ctx>& mu, const Subspace<typename Ctx::F>& w) {
    using K = typename Ctx::K;
    if (w.is_zero()) throw PreconditionError("adapted basis: zero subspace");
    if (w.ambient != mu.ambient()) throw PreconditionError("adapted basis: ambient mismatch");
    Mat<K> cemb = embed_mat(mu.ctx, mat_transpose(w.basis));  // ambient x k columns
    NormRep<Ctx> out;
    out.ctx = mu.ctx;
    if constexpr (!Ctx::archimedean) {
        std::vector<std::vector<K>> cols;
        for (int j = 0; j < cemb.cols; ++j) cols.push_back(norm_coords(mu, cemb.col(j)));
        std::vector<typename Ctx::W> wts;
        detail::ultrametric_orthogonalize(mu.ctx, mu.weights, cols, wts);
        Mat<K> incoords(mu.dim(), static_cast<int>(cols.size()), mu.ctx.k_model());
        for (std::size_t j = 0; j < cols.size(); ++j) incoords.set_col(static_cast<int>(j), cols[j]);
        out.basis = mat_mul(mu.basis, incoords);
        out.weights = std::move(wts);
    } else {
        Mat<K> g = norm_gram(mu);
        Mat<K> gw = mat_mul(mat_conj_transpose(cemb), mat_mul(g, cemb));
        Mat<K> l = detail::chol_lower(gw);
        // Columns C L^{-H} turn the restricted Gram form into the identity,
        // so all weights are 1 in this presentation.
        Mat<K> linv_h = mat_conj_transpose(mat_inverse(l));
        out.basis = mat_mul(cemb, linv_h);
        out.weights.assign(static_cast<std::size_t>(cemb.cols), Wops<Ctx>::one());
    }
    return out;
}

// The complement-coordinate convention for quotients: classes of these
// vectors are the working basis of outer/inner.
template <class F>
std::vector<std::vector<F>> quotient_basis(const Subspace<F>& outer, const Subspace<F>& inner) {
    return complement_basis(outer, inner);
}

// Norm induced on H'/H'' by the restriction/dual chain; the result is a
// square presentation in the coordinates of quotient_basis(H', H'').
template <class Ctx>
NormRep<Ctx> induce_subquotient(const NormRep<Ctx>& mu, const Subspace<typename Ctx::F>& hp,
                                const Subspace<typename Ctx::F>& hpp) {
    using K = typename Ctx::K;
    using F = typename Ctx::F;
    if (!hp.contains(hpp)) throw PreconditionError("subquotient: subspaces not nested");
    if (hp.dim() == hpp.dim()) throw PreconditionError("subquotient: H' equals H''");

    const Ctx& ctx = mu.ctx;
    const int s = hp.dim();
    const int r = s - hpp.dim();

    // Restrict to H' and re-present in H'-echelon coordinates.
    NormRep<Ctx> restricted = adapted_basis(mu, hp);
    Mat<K> hbasis = embed_mat(ctx, mat_transpose(hp.basis));  // ambient x s
    Mat<K> incoords(s, s, ctx.k_model());
    for (int j = 0; j < s; ++j) {
        auto sol = mat_solve(hbasis, restricted.basis.col(j));
        if (!sol) throw PreconditionError("subquotient: restriction left H'");
        incoords.set_col(j, *sol);
    }
    NormRep<Ctx> mu_hp{ctx, std::move(incoords), restricted.weights};

    if (hpp.is_zero() && r == s) {
        // Quotient by 0: re-express in the quotient basis convention.
        NormRep<Ctx> out = mu_hp;
        auto qb = quotient_basis(hp, hpp);
        Mat<K> qmat(s, s, ctx.k_model());
        for (int j = 0; j < s; ++j) {
            auto sol = mat_solve(hbasis, embed_vec(ctx, qb[static_cast<std::size_t>(j)]));
            qmat.set_col(j, *sol);
        }
        out.basis = mat_mul(mat_inverse(qmat), mu_hp.basis);
        return out;
    }

    NormRep<Ctx> dual_hp = norm_dual(mu_hp);

    // Annihilator of H'' inside (H')*, an F-rational subspace.
    Mat<F> hpp_in_hp(hpp.dim(), s, ctx.f_model());
    for (int i = 0; i < hpp.dim(); ++i) {
        std::vector<F> row(static_cast<std::size_t>(hp.ambient));
        for (int j = 0; j < hp.ambient; ++j) row[static_cast<std::size_t>(j)] = hpp.basis.at(i, j);
        auto sol = mat_solve(mat_transpose(hp.basis), row);
        if (!sol) throw PreconditionError("subquotient: inner space not inside outer");
        for (int j = 0; j < s; ++j) hpp_in_hp.at(i, j) = (*sol)[static_cast<std::size_t>(j)];
    }
    auto ann_vectors = mat_nullspace(hpp_in_hp);
    Subspace<F> ann = Subspace<F>::from_vectors(ann_vectors, s, ctx.f_model());

    NormRep<Ctx> nu_star = adapted_basis(dual_hp, ann);

    // Pair the functionals against the complement classes and dualize back.
    auto qb = quotient_basis(hp, hpp);
    Mat<K> comp(s, r, ctx.k_model());
    for (int j = 0; j < r; ++j) {
        auto sol = mat_solve(hbasis, embed_vec(ctx, qb[static_cast<std::size_t>(j)]));
        if (!sol) throw PreconditionError("subquotient: complement vector left H'");
        comp.set_col(j, *sol);
    }
    Mat<K> pairing = mat_mul(mat_transpose(nu_star.basis), comp);  // r x r
    NormRep<Ctx> nu;
    nu.ctx = ctx;
    nu.basis = mat_inverse(pairing);
    nu.weights.reserve(static_cast<std::size_t>(r));
    for (const auto& w : nu_star.weights) nu.weights.push_back(Wops<Ctx>::div(Wops<Ctx>::one(), w));
    return nu;
}

// |mu : e| = |det h|^{-1} prod r_i for the presentation basis e' = h e.
template <class Ctx>
typename Ctx::W abs_rel(const NormRep<Ctx>& mu, const Mat<typename Ctx::K>& e) {
    using W = typename Ctx::W;
    if (mu.ambient() != mu.dim()) throw PreconditionError("abs_rel: rectangular presentation");
    if (e.rows != mu.ambient() || e.cols != mu.dim()) throw PreconditionError("abs_rel: basis dimension mismatch");
    auto einv = mat_inverse_opt(e);
    if (!einv) throw PreconditionError("abs_rel: singular reference basis");
    Mat<typename Ctx::K> h = mat_mul(mu.basis, *einv);
    W det_abs = mu.ctx.abs(mat_det(h));
    if (Wops<Ctx>::is_zero(det_abs)) throw PreconditionError("abs_rel: singular presentation");
    W out = Wops<Ctx>::div(Wops<Ctx>::one(), det_abs);
    for (const auto& w : mu.weights) out = Wops<Ctx>::mul(out, w);
    return out;
}

// Scale so that |mu : e| = 1.
template <class Ctx>
NormRep<Ctx> normalize_abs_rel(const NormRep<Ctx>& mu, const Mat<typename Ctx::K>& e) {
    typename Ctx::W cur = abs_rel(mu, e);
    typename Ctx::W c = Wops<Ctx>::pow(cur, make_rat(-1, mu.dim()));
    NormRep<Ctx> out = mu;
    for (auto& w : out.weights) w = Wops<Ctx>::mul(w, c);
    return out;
}

namespace detail {

template <class Ctx>
void check_comparable(const NormRep<Ctx>& a, const NormRep<Ctx>& b) {
    if (!(a.ctx.place() == b.ctx.place())) throw PreconditionError("class: place mismatch");
    if (a.ambient() != b.ambient() || a.dim() != b.dim()) throw PreconditionError("class: dimension mismatch");
}

// Re-express b in the coordinates of a's presenting basis; errors when the
// two presentations span different subspaces.
template <class Ctx>
Mat<typename Ctx::K> transition(const NormRep<Ctx>& a, const NormRep<Ctx>& b) {
    Mat<typename Ctx::K> t(a.dim(), b.dim(), a.ctx.k_model());
    for (int j = 0; j < b.dim(); ++j) {
        auto sol = mat_solve(a.basis, b.basis.col(j));
        if (!sol) throw PreconditionError("class: norms on different subspaces");
        t.set_col(j, *sol);
    }
    return t;
}

}  // namespace detail

// Equality of classes (equality of norms up to a positive constant). Exact
// at non-archimedean places via mutual evaluation on the two adapted bases;
// archimedean places compare Gram matrices up to scale, rel-tol 1e-9.
template <class Ctx>
bool class_eq(const NormRep<Ctx>& a, const NormRep<Ctx>& b, double tol = 1e-9) {
    detail::check_comparable(a, b);
    if constexpr (!Ctx::archimedean) {
        std::size_t anchor = b.weights.size();
        for (std::size_t j = 0; j < b.weights.size(); ++j)
            if (!b.weights[j].is_zero()) {
                anchor = j;
                break;
            }
        if (anchor == b.weights.size()) throw PreconditionError("class: zero semi-norm");
        PosReal c;
        try {
            c = norm_eval(a, b.basis.col(static_cast<int>(anchor))).div(b.weights[anchor]);
        } catch (const PreconditionError&) {
            return false;  // spans differ
        }
        if (c.is_zero()) return false;
        for (int j = 0; j < b.dim(); ++j) {
            PosReal lhs;
            try {
                lhs = norm_eval(a, b.basis.col(j));
            } catch (const PreconditionError&) {
                return false;
            }
            if (!lhs.eq(c.mul(b.weights[static_cast<std::size_t>(j)]))) return false;
        }
        for (int i = 0; i < a.dim(); ++i) {
            PosReal rhs;
            try {
                rhs = norm_eval(b, a.basis.col(i));
            } catch (const PreconditionError&) {
                return false;
            }
            if (!a.weights[static_cast<std::size_t>(i)].eq(c.mul(rhs))) return false;
        }
        return true;
    } else {
        using K = typename Ctx::K;
        Mat<K> t;
        try {
            t = detail::transition(a, b);
        } catch (const PreconditionError&) {
            return false;
        }
        NormRep<Ctx> a0{a.ctx, Mat<K>::identity(a.dim(), a.ctx.k_model()), a.weights};
        NormRep<Ctx> b0{b.ctx, std::move(t), b.weights};
        Mat<K> g1 = norm_gram(a0), g2 = norm_gram(b0);
        double m2 = 0;
        int bi = 0, bj = 0;
        for (int i = 0; i < g2.rows; ++i)
            for (int j = 0; j < g2.cols; ++j)
                if (FieldOps<K>::mag(g2.at(i, j)) > m2) {
                    m2 = FieldOps<K>::mag(g2.at(i, j));
                    bi = i;
                    bj = j;
                }
        if (m2 == 0) throw PreconditionError("class: zero semi-norm");
        K c = FieldOps<K>::div(g1.at(bi, bj), g2.at(bi, bj));
        double m1 = 0;
        for (int i = 0; i < g1.rows; ++i)
            for (int j = 0; j < g1.cols; ++j) m1 = std::max(m1, FieldOps<K>::mag(g1.at(i, j)));
        if (FieldOps<K>::mag(c) == 0) return false;
        for (int i = 0; i < g1.rows; ++i)
            for (int j = 0; j < g1.cols; ++j) {
                K diff = FieldOps<K>::sub(g1.at(i, j), FieldOps<K>::mul(c, g2.at(i, j)));
                if (FieldOps<K>::mag(diff) > tol * std::max(1.0, m1)) return false;
            }
        return true;
    }
}

template <class Ctx>
bool class_eq(const NormClass<Ctx>& a, const NormClass<Ctx>& b, double tol = 1e-9) {
    return class_eq(a.rep, b.rep, tol);
}

// log( sup mu/nu * sup nu/mu ); scale invariant, zero iff the classes agree.
template <class Ctx>
double class_distance(const NormRep<Ctx>& a, const NormRep<Ctx>& b) {
    detail::check_comparable(a, b);
    if constexpr (!Ctx::archimedean) {
        PosReal s1 = PosReal::zero(), s2 = PosReal::zero();
        for (int j = 0; j < b.dim(); ++j)
            s1 = pr_max(s1, norm_eval(a, b.basis.col(j)).div(b.weights[static_cast<std::size_t>(j)]));
        for (int i = 0; i < a.dim(); ++i)
            s2 = pr_max(s2, norm_eval(b, a.basis.col(i)).div(a.weights[static_cast<std::size_t>(i)]));
        PosReal prod = s1.mul(s2);
        if (prod.is_one()) return 0.0;
        return static_cast<double>(prod.log_value());
    } else {
        using K = typename Ctx::K;
        Mat<K> t = detail::transition(a, b);
        NormRep<Ctx> a0{a.ctx, Mat<K>::identity(a.dim(), a.ctx.k_model()), a.weights};
        NormRep<Ctx> b0{b.ctx, std::move(t), b.weights};
        Mat<K> g1 = norm_gram(a0), g2 = norm_gram(b0);
        Mat<K> l = detail::chol_lower(g2);
        Mat<K> linv = mat_inverse(l);
        Mat<K> pencil = mat_mul(linv, mat_mul(g1, mat_conj_transpose(linv)));
        std::vector<double> ev;
        if constexpr (Ctx::kind == PlaceKind::real)
            ev = sym_eigenvalues(pencil);
        else
            ev = herm_eigenvalues(pencil);
        double lo = ev.front(), hi = ev.back();
        if (lo <= 0) throw PreconditionError("class distance: degenerate norm");
        double ratio = hi / lo;
        // Values are squared ratios in the real convention.
        double d = Ctx::kind == PlaceKind::real ? 0.5 * std::log(ratio) : std::log(ratio);
        return std::fabs(d) < 1e-12 ? std::fabs(d) : d;
    }
}

}  // namespace normgeom
