#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "normgeom/place.hpp"

namespace normgeom {

// Field operations for the scalars a Mat can carry. Exact fields pivot on
// any nonzero entry; floating fields pivot by magnitude with tol 1e-12.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static constexpr bool exact = true;
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
    static bool is_zero(const Rat& x) { return x == 0; }
    static double mag(const Rat& x) { return std::fabs(x.get_d()); }
    static Rat add(const Rat& a, const Rat& b) { return a + b; }
    static Rat sub(const Rat& a, const Rat& b) { return a - b; }
    static Rat mul(const Rat& a, const Rat& b) { return a * b; }
    static Rat div(const Rat& a, const Rat& b) { return a / b; }
    static Rat neg(const Rat& a) { return -a; }
    static Rat conj(const Rat& a) { return a; }
};

template <>
struct FieldOps<double> {
    static constexpr bool exact = false;
    static double zero(double) { return 0.0; }
    static double one(double) { return 1.0; }
    static bool is_zero(double x) { return std::fabs(x) <= 1e-12; }
    static double mag(double x) { return std::fabs(x); }
    static double add(double a, double b) { return a + b; }
    static double sub(double a, double b) { return a - b; }
    static double mul(double a, double b) { return a * b; }
    static double div(double a, double b) { return a / b; }
    static double neg(double a) { return -a; }
    static double conj(double a) { return a; }
};

template <>
struct FieldOps<Cplx> {
    static constexpr bool exact = false;
    static Cplx zero(const Cplx&) { return Cplx(0, 0); }
    static Cplx one(const Cplx&) { return Cplx(1, 0); }
    static bool is_zero(const Cplx& x) { return std::abs(x) <= 1e-12; }
    static double mag(const Cplx& x) { return std::abs(x); }
    static Cplx add(const Cplx& a, const Cplx& b) { return a + b; }
    static Cplx sub(const Cplx& a, const Cplx& b) { return a - b; }
    static Cplx mul(const Cplx& a, const Cplx& b) { return a * b; }
    static Cplx div(const Cplx& a, const Cplx& b) { return a / b; }
    static Cplx neg(const Cplx& a) { return -a; }
    static Cplx conj(const Cplx& a) { return std::conj(a); }
};

template <>
struct FieldOps<FpRatFun> {
    static constexpr bool exact = true;
    static FpRatFun zero(const FpRatFun& model) { return FpRatFun::zero(model.prime()); }
    static FpRatFun one(const FpRatFun& model) { return FpRatFun::one(model.prime()); }
    static bool is_zero(const FpRatFun& x) { return x.is_zero(); }
    static double mag(const FpRatFun& x) { return x.is_zero() ? 0.0 : 1.0; }
    static FpRatFun add(const FpRatFun& a, const FpRatFun& b) { return rf_add(a, b); }
    static FpRatFun sub(const FpRatFun& a, const FpRatFun& b) { return rf_sub(a, b); }
    static FpRatFun mul(const FpRatFun& a, const FpRatFun& b) { return rf_mul(a, b); }
    static FpRatFun div(const FpRatFun& a, const FpRatFun& b) { return rf_div(a, b); }
    static FpRatFun neg(const FpRatFun& a) { return rf_neg(a); }
    static FpRatFun conj(const FpRatFun& a) { return a; }
};

template <>
struct FieldOps<Fp> {
    static constexpr bool exact = true;
    static Fp zero(const Fp& model) { return Fp(model.p, 0); }
    static Fp one(const Fp& model) { return Fp(model.p, 1); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static double mag(const Fp& x) { return x.is_zero() ? 0.0 : 1.0; }
    static Fp add(const Fp& a, const Fp& b) { return fp_add(a, b); }
    static Fp sub(const Fp& a, const Fp& b) { return fp_sub(a, b); }
    static Fp mul(const Fp& a, const Fp& b) { return fp_mul(a, b); }
    static Fp div(const Fp& a, const Fp& b) { return fp_mul(a, fp_inv(b)); }
    static Fp neg(const Fp& a) { return fp_neg(a); }
    static Fp conj(const Fp& a) { return a; }
};

template <class K>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(int r, int c, K fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const K& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    // A scalar to model runtime field parameters (p, characteristic) from.
    K model() const {
        if (a.empty()) throw PreconditionError("matrix: empty model");
        return a[0];
    }

    static Mat identity(int n, K model) {
        Mat m(n, n, FieldOps<K>::zero(model));
        for (int i = 0; i < n; ++i) m.at(i, i) = FieldOps<K>::one(model);
        return m;
    }

    std::vector<K> col(int j) const {
        std::vector<K> v;
        v.reserve(rows);
        for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
        return v;
    }

    void set_col(int j, const std::vector<K>& v) {
        for (int i = 0; i < rows; ++i) at(i, j) = v[static_cast<std::size_t>(i)];
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols) return false;
        for (std::size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] == y.a[i])) return false;
        return true;
    }
};

template <class K>
Mat<K> mat_mul(const Mat<K>& x, const Mat<K>& y) {
    if (x.cols != y.rows) throw PreconditionError("matrix: dimension mismatch in product");
    using F = FieldOps<K>;
    Mat<K> r(x.rows, y.cols, F::zero(x.model()));
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (F::is_zero(x.at(i, k)) && F::exact) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = F::add(r.at(i, j), F::mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

template <class K>
std::vector<K> mat_apply(const Mat<K>& x, const std::vector<K>& v) {
    if (x.cols != static_cast<int>(v.size())) throw PreconditionError("matrix: dimension mismatch in apply");
    using F = FieldOps<K>;
    std::vector<K> r(static_cast<std::size_t>(x.rows), F::zero(x.model()));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] = F::add(r[i], F::mul(x.at(i, j), v[j]));
    return r;
}

template <class K>
Mat<K> mat_transpose(const Mat<K>& x) {
    Mat<K> r(x.cols, x.rows, x.model());
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

template <class K>
Mat<K> mat_conj_transpose(const Mat<K>& x) {
    Mat<K> r = mat_transpose(x);
    for (auto& v : r.a) v = FieldOps<K>::conj(v);
    return r;
}

template <class K>
Mat<K> mat_sub(const Mat<K>& x, const Mat<K>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw PreconditionError("matrix: dimension mismatch");
    Mat<K> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = FieldOps<K>::sub(r.a[i], y.a[i]);
    return r;
}

// In-place reduced row echelon form; returns pivot columns. The permutation
// sign ends up in *sign (for determinants); *transform accumulates the row
// operations when requested.
template <class K>
std::vector<int> mat_rref(Mat<K>& m, int* sign = nullptr, Mat<K>* transform = nullptr) {
    using F = FieldOps<K>;
    const K model = m.a.empty() ? K{} : m.model();
    if (sign) *sign = 1;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int best = -1;
        if constexpr (F::exact) {
            for (int i = row; i < m.rows; ++i)
                if (!F::is_zero(m.at(i, col))) {
                    best = i;
                    break;
                }
        } else {
            double bm = 0;
            for (int i = row; i < m.rows; ++i) {
                double g = F::mag(m.at(i, col));
                if (g > bm) {
                    bm = g;
                    best = i;
                }
            }
            if (best >= 0 && bm <= 1e-12) best = -1;
        }
        if (best < 0) continue;
        if (best != row) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(best, j), m.at(row, j));
            if (transform)
                for (int j = 0; j < transform->cols; ++j) std::swap(transform->at(best, j), transform->at(row, j));
            if (sign) *sign = -*sign;
        }
        K piv = m.at(row, col);
        for (int j = 0; j < m.cols; ++j) m.at(row, j) = F::div(m.at(row, j), piv);
        if (transform)
            for (int j = 0; j < transform->cols; ++j) transform->at(row, j) = F::div(transform->at(row, j), piv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || F::is_zero(m.at(i, col))) continue;
            K f = m.at(i, col);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = F::sub(m.at(i, j), F::mul(f, m.at(row, j)));
            if (transform)
                for (int j = 0; j < transform->cols; ++j)
                    transform->at(i, j) = F::sub(transform->at(i, j), F::mul(f, transform->at(row, j)));
            m.at(i, col) = F::zero(model);  // kill float residue
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
int mat_rank(Mat<K> m) {
    return static_cast<int>(mat_rref(m).size());
}

template <class K>
K mat_det(Mat<K> m) {
    if (m.rows != m.cols) throw PreconditionError("matrix: determinant of non-square matrix");
    using F = FieldOps<K>;
    const K model = m.model();
    K det = F::one(model);
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int best = -1;
        if constexpr (F::exact) {
            for (int i = col; i < n; ++i)
                if (!F::is_zero(m.at(i, col))) {
                    best = i;
                    break;
                }
        } else {
            double bm = 1e-300;
            for (int i = col; i < n; ++i)
                if (F::mag(m.at(i, col)) > bm) {
                    bm = F::mag(m.at(i, col));
                    best = i;
                }
            if (best >= 0 && F::mag(m.at(best, col)) <= 1e-12) best = -1;
        }
        if (best < 0) return F::zero(model);
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(best, j), m.at(col, j));
            det = F::neg(det);
        }
        det = F::mul(det, m.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (F::is_zero(m.at(i, col))) continue;
            K f = F::div(m.at(i, col), m.at(col, col));
            for (int j = col; j < n; ++j) m.at(i, j) = F::sub(m.at(i, j), F::mul(f, m.at(col, j)));
        }
    }
    return det;
}

template <class K>
std::optional<Mat<K>> mat_inverse_opt(const Mat<K>& x) {
    if (x.rows != x.cols) throw PreconditionError("matrix: inverse of non-square matrix");
    Mat<K> m = x;
    Mat<K> inv = Mat<K>::identity(x.rows, x.model());
    auto pivots = mat_rref(m, nullptr, &inv);
    if (static_cast<int>(pivots.size()) != x.rows) return std::nullopt;
    return inv;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& x) {
    auto inv = mat_inverse_opt(x);
    if (!inv) throw PreconditionError("matrix: singular matrix");
    return *inv;
}

// Solves A x = b; nullopt when inconsistent. A may be rectangular with full
// column rank (the unique-solution case used for coordinates in a basis).
template <class K>
std::optional<std::vector<K>> mat_solve(const Mat<K>& A, const std::vector<K>& b) {
    using F = FieldOps<K>;
    if (A.rows != static_cast<int>(b.size())) throw PreconditionError("matrix: solve dimension mismatch");
    Mat<K> aug(A.rows, A.cols + 1, F::zero(A.model()));
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[static_cast<std::size_t>(i)];
    }
    auto pivots = mat_rref(aug);
    std::vector<K> x(static_cast<std::size_t>(A.cols), F::zero(A.model()));
    int row = 0;
    for (int piv : pivots) {
        if (piv == A.cols) return std::nullopt;  // 0 = 1 row
        x[static_cast<std::size_t>(piv)] = aug.at(row, A.cols);
        ++row;
    }
    // Reject underdetermined residue: every non-pivot row must be zero.
    for (int i = row; i < A.rows; ++i)
        if (!F::is_zero(aug.at(i, A.cols))) return std::nullopt;
    return x;
}

// Basis of the right nullspace, one vector per non-pivot column.
template <class K>
std::vector<std::vector<K>> mat_nullspace(Mat<K> m) {
    using F = FieldOps<K>;
    const K model = m.model();
    auto pivots = mat_rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<K>> basis;
    for (int j = 0; j < m.cols; ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        std::vector<K> v(static_cast<std::size_t>(m.cols), F::zero(model));
        v[static_cast<std::size_t>(j)] = F::one(model);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = F::neg(m.at(static_cast<int>(r), j));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K, class K2>
Mat<K2> mat_map(const Mat<K>& x, K2 (*f)(const K&)) {
    Mat<K2> r;
    r.rows = x.rows;
    r.cols = x.cols;
    r.a.reserve(x.a.size());
    for (const auto& v : x.a) r.a.push_back(f(v));
    return r;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> sym_eigenvalues(Mat<double> s);
// Eigenvalues of a Hermitian matrix (real output).
std::vector<double> herm_eigenvalues(Mat<Cplx> h);

}  // namespace normgeom
