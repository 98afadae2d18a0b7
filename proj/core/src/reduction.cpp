#include "normgeom/reduction.hpp"

namespace normgeom {

namespace {

Rat round_rat(const Rat& q) {
    // nearest integer, ties toward zero
    Int num = q.get_num(), den = q.get_den();
    Int twice = 2 * num;
    Int fl, r;
    mpz_fdiv_qr(fl.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat frac = q - Rat(fl);
    if (frac > make_rat(1, 2)) return Rat(fl + 1);
    if (frac < make_rat(1, 2)) return Rat(fl);
    (void)twice;
    return q > 0 ? Rat(fl) : Rat(fl + 1);
}

struct Gso {
    std::vector<Rat> B;  // squared lengths of the orthogonalized vectors
    Mat<Rat> mu;         // unit lower triangular coefficients
};

Gso gso_of(const Mat<Rat>& g) {
    int n = g.rows;
    Gso s;
    s.B.assign(static_cast<std::size_t>(n), Rat(0));
    s.mu = Mat<Rat>::identity(n, Rat(0));
    // mu and B from the Gram matrix by the recurrence
    // <b_i, b*_j> = g_ij - sum_{k<j} mu_ik mu_jk B_k.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Rat inner = g.at(i, j);
            for (int k = 0; k < j; ++k) inner -= s.mu.at(i, k) * s.mu.at(j, k) * s.B[static_cast<std::size_t>(k)];
            s.mu.at(i, j) = inner / s.B[static_cast<std::size_t>(j)];
        }
        Rat b = g.at(i, i);
        for (int k = 0; k < i; ++k) b -= s.mu.at(i, k) * s.mu.at(i, k) * s.B[static_cast<std::size_t>(k)];
        if (b <= 0) throw PreconditionError("reduce: gram matrix not positive definite");
        s.B[static_cast<std::size_t>(i)] = b;
    }
    return s;
}

void row_op(Mat<Rat>& g, Mat<Rat>& u, int dst, int src, const Rat& c) {
    // b_dst -= c b_src; update the Gram congruently.
    int n = g.rows;
    for (int j = 0; j < n; ++j) u.at(dst, j) -= c * u.at(src, j);
    for (int j = 0; j < n; ++j) g.at(dst, j) -= c * g.at(src, j);
    for (int i = 0; i < n; ++i) g.at(i, dst) -= c * g.at(i, src);
}

void row_swap(Mat<Rat>& g, Mat<Rat>& u, int a, int b) {
    int n = g.rows;
    for (int j = 0; j < n; ++j) std::swap(u.at(a, j), u.at(b, j));
    for (int j = 0; j < n; ++j) std::swap(g.at(a, j), g.at(b, j));
    for (int i = 0; i < n; ++i) std::swap(g.at(i, a), g.at(i, b));
}

}  // namespace

Mat<Rat> lll_reduce(const Mat<Rat>& gram, const Rat& delta, Mat<Rat>* gram_out) {
    if (gram.rows != gram.cols) throw PreconditionError("reduce: non-square gram matrix");
    for (int i = 0; i < gram.rows; ++i)
        for (int j = 0; j < gram.cols; ++j)
            if (!(gram.at(i, j) == gram.at(j, i))) throw PreconditionError("reduce: gram matrix not symmetric");
    const int n = gram.rows;
    Mat<Rat> g = gram;
    Mat<Rat> u = Mat<Rat>::identity(n, Rat(0));
    gso_of(g);  // positivity check

    int k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 100000) throw PreconditionError("reduce: lll failed to terminate");
        Gso s = gso_of(g);
        for (int j = k - 1; j >= 0; --j) {
            Rat c = round_rat(s.mu.at(k, j));
            if (c != 0) {
                row_op(g, u, k, j, c);
                s = gso_of(g);
            }
        }
        Rat lhs = s.B[static_cast<std::size_t>(k)];
        Rat rhs = (delta - s.mu.at(k, k - 1) * s.mu.at(k, k - 1)) * s.B[static_cast<std::size_t>(k - 1)];
        if (lhs < rhs) {
            row_swap(g, u, k, k - 1);
            k = std::max(k - 1, 1);
        } else {
            ++k;
        }
    }
    // Final full size reduction.
    Gso s = gso_of(g);
    for (int i = 1; i < n; ++i)
        for (int j = i - 1; j >= 0; --j) {
            Rat c = round_rat(s.mu.at(i, j));
            if (c != 0) {
                row_op(g, u, i, j, c);
                s = gso_of(g);
            }
        }
    if (gram_out) *gram_out = g;
    return u;
}

ReductionResult reduce_point(const Mat<Rat>& gram) {
    const int n = gram.rows;
    const Rat delta = n == 2 ? Rat(1) : make_rat(99, 100);
    Mat<Rat> gred;
    Mat<Rat> u = lll_reduce(gram, delta, &gred);

    // Chart coordinates from the exact LDL split: G = L D L^T gives the
    // unipotent coordinate L^{-T} and t_i^2 = D_i / D_{i+1}.
    Gso s = gso_of(gred);
    Mat<Rat> linv = mat_inverse(s.mu);  // unit lower triangular

    // Size-reduce the chart coordinate: column ops on L^{-1} correspond to
    // integer unipotent changes of the lattice basis and leave D untouched.
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            Rat c = round_rat(linv.at(i, j));
            if (c == 0) continue;
            // L^{-1} col_j -= c col_i  <=>  basis row_i += c row_j
            for (int r = 0; r < n; ++r) linv.at(r, j) -= c * linv.at(r, i);
            for (int r = 0; r < n; ++r) u.at(i, r) += c * u.at(j, r);
        }
    }

    ReductionResult out;
    out.chart_g = mat_transpose(linv);
    out.t_sq.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) {
        out.t_sq.push_back(s.B[static_cast<std::size_t>(i)] / s.B[static_cast<std::size_t>(i + 1)]);
        out.t.push_back(std::sqrt(out.t_sq.back().get_d()));
    }
    out.c1 = n == 2 ? 2.0 / std::sqrt(3.0) : 2.0 / std::sqrt(4.0 * delta.get_d() - 1.0);

    // gamma with act(gamma, x) the reduced class: gram transforms by
    // congruence with U, the norm acts through gamma = U^{-T}.
    out.gamma = mat_transpose(mat_inverse(u));
    return out;
}

NormRep<RealCtx> norm_from_gram(const Mat<Rat>& gram) {
    Mat<double> gd(gram.rows, gram.cols, 0.0);
    for (int i = 0; i < gram.rows; ++i)
        for (int j = 0; j < gram.cols; ++j) gd.at(i, j) = gram.at(i, j).get_d();
    return norm_from_gram_d(gd);
}

NormRep<RealCtx> norm_from_gram_d(const Mat<double>& gram) {
    // mu(x) = sqrt(x^T G x): with G = L L^T the presenting basis is L^{-T}.
    RealCtx ctx;
    Mat<double> l = detail::chol_lower(gram);
    NormRep<RealCtx> rep;
    rep.ctx = ctx;
    rep.basis = mat_transpose(mat_inverse(l));
    rep.weights.assign(static_cast<std::size_t>(gram.rows), 1.0);
    return rep;
}

Rat e_exponent(int i, int j, int d) {
    if (i < 1 || i > d - 1 || j < 1 || j > d - 1) throw PreconditionError("lemdet: exponent index out of range");
    if (j <= i) return make_rat(static_cast<long>(j) * (d - i), i);
    return Rat(d - j);
}

}  // namespace normgeom
