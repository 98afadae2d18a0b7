#pragma once

#include <set>

#include "normgeom/mat.hpp"

namespace normgeom {

// Subspace of F^d with the reduced row echelon basis as its canonical
// representative, so equality and membership are plain comparisons.
template <class K>
struct Subspace {
    int ambient = 0;
    Mat<K> basis;  // rank x ambient, RREF rows
    K model_{};    // carries runtime field parameters even for the zero space

    int dim() const { return basis.rows; }
    bool is_zero() const { return basis.rows == 0; }

    static Subspace zero(int ambient, K model) {
        Subspace s;
        s.ambient = ambient;
        s.basis = Mat<K>(0, ambient, model);
        s.model_ = model;
        return s;
    }

    static Subspace full(int ambient, K model) { return from_rows(Mat<K>::identity(ambient, model)); }

    static Subspace from_rows(Mat<K> rows) {
        Subspace s;
        s.ambient = rows.cols;
        s.model_ = rows.a.empty() ? K{} : rows.model();
        mat_rref(rows);
        int rank = 0;
        for (int i = 0; i < rows.rows; ++i) {
            bool nonzero = false;
            for (int j = 0; j < rows.cols; ++j)
                if (!FieldOps<K>::is_zero(rows.at(i, j))) nonzero = true;
            if (nonzero) ++rank;
        }
        Mat<K> b(rank, rows.cols, s.model_);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rows.cols; ++j) b.at(i, j) = rows.at(i, j);
        s.basis = std::move(b);
        return s;
    }

    static Subspace from_vectors(const std::vector<std::vector<K>>& vecs, int ambient, K model) {
        Mat<K> rows(static_cast<int>(vecs.size()), ambient, model);
        for (int i = 0; i < rows.rows; ++i)
            for (int j = 0; j < ambient; ++j) rows.at(i, j) = vecs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return from_rows(std::move(rows));
    }

    // Standard coordinate subspace <e_1, ..., e_k>.
    static Subspace leading(int ambient, int k, K model) {
        Mat<K> rows(k, ambient, FieldOps<K>::zero(model));
        for (int i = 0; i < k; ++i) rows.at(i, i) = FieldOps<K>::one(model);
        return from_rows(std::move(rows));
    }

    K model() const { return model_; }

    bool contains(const std::vector<K>& v) const {
        if (is_zero()) {
            for (const auto& x : v)
                if (!FieldOps<K>::is_zero(x)) return false;
            return true;
        }
        auto sol = mat_solve(mat_transpose(basis), v);
        return sol.has_value();
    }

    bool contains(const Subspace& other) const {
        for (int i = 0; i < other.basis.rows; ++i) {
            std::vector<K> row(static_cast<std::size_t>(ambient));
            for (int j = 0; j < ambient; ++j) row[static_cast<std::size_t>(j)] = other.basis.at(i, j);
            if (!contains(row)) return false;
        }
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient == b.ambient && a.basis == b.basis;
    }
};

// Image of a subspace under an invertible matrix, re-echelonized.
template <class K>
Subspace<K> subspace_image(const Mat<K>& g, const Subspace<K>& s) {
    if (s.is_zero()) return s;
    Mat<K> rows = mat_transpose(mat_mul(g, mat_transpose(s.basis)));
    return Subspace<K>::from_rows(std::move(rows));
}

// Flag 0 = V_{-1} < V_0 < ... < V_m = V; only the proper nonzero steps
// V_0..V_{m-1} are stored. The trivial flag (m = 0) has no steps.
template <class K>
struct Flag {
    int ambient = 0;
    std::vector<Subspace<K>> steps;

    int num_steps() const { return static_cast<int>(steps.size()); }
    int num_graded() const { return num_steps() + 1; }

    // V_i with the conventions V_{-1} = 0 and V_m = V.
    Subspace<K> step(int i, K model) const {
        if (i < 0) return Subspace<K>::zero(ambient, model);
        if (i >= num_steps()) return Subspace<K>::full(ambient, model);
        return steps[static_cast<std::size_t>(i)];
    }

    std::set<int> dims() const {
        std::set<int> ds;
        for (const auto& s : steps) ds.insert(s.dim());
        return ds;
    }

    void validate() const {
        int prev = 0;
        for (const auto& s : steps) {
            if (s.ambient != ambient) throw PreconditionError("flag: ambient mismatch");
            if (s.dim() <= prev || s.dim() >= ambient) throw PreconditionError("flag: dims not strictly increasing");
            prev = s.dim();
        }
        for (std::size_t i = 1; i < steps.size(); ++i)
            if (!steps[i].contains(steps[i - 1])) throw PreconditionError("flag: steps not nested");
    }

    // True when every step of this flag appears among the steps of finer,
    // i.e. the parabolic of this flag contains the parabolic of finer.
    bool coarsens(const Flag& finer) const {
        for (const auto& s : steps) {
            bool found = false;
            for (const auto& t : finer.steps)
                if (s == t) found = true;
            if (!found) return false;
        }
        return true;
    }

    friend bool operator==(const Flag& a, const Flag& b) { return a.ambient == b.ambient && a.steps == b.steps; }
};

// Parabolic type: the subset of {1, ..., d-1} of flag step dimensions.
struct ParabolicType {
    int d = 0;
    std::set<int> I;

    std::set<int> delta() const { return I; }
    std::set<int> delta_complement() const {
        std::set<int> c;
        for (int i = 1; i < d; ++i)
            if (!I.count(i)) c.insert(i);
        return c;
    }
};

// The standard parabolic P_I: flag of leading coordinate subspaces with
// dimension set I.
template <class K>
Flag<K> standard_parabolic(const ParabolicType& type, K model) {
    Flag<K> f;
    f.ambient = type.d;
    for (int i : type.I) {
        if (i < 1 || i >= type.d) throw PreconditionError("parabolic type: index out of range");
        f.steps.push_back(Subspace<K>::leading(type.d, i, model));
    }
    return f;
}

template <class K>
ParabolicType parabolic_type_of_flag(const Flag<K>& f) {
    ParabolicType t;
    t.d = f.ambient;
    for (int i : f.dims()) t.I.insert(i);
    return t;
}

// gV_i = V_i for all steps.
template <class K>
bool stabilizes(const Mat<K>& g, const Flag<K>& flag) {
    if (!mat_inverse_opt(g)) throw PreconditionError("stabilizes: singular matrix");
    for (const auto& s : flag.steps)
        if (!(subspace_image(g, s) == s)) return false;
    return true;
}

// Echelon completion: vectors of outer extending a basis of inner, greedily
// taken from outer's echelon basis. Deterministic in (outer, inner).
template <class K>
std::vector<std::vector<K>> complement_basis(const Subspace<K>& outer, const Subspace<K>& inner) {
    if (!outer.contains(inner)) throw PreconditionError("complement: subspaces not nested");
    K model = outer.model();
    std::vector<std::vector<K>> picked;
    Mat<K> span = inner.basis;
    for (int i = 0; i < outer.basis.rows; ++i) {
        std::vector<K> v(static_cast<std::size_t>(outer.ambient));
        for (int j = 0; j < outer.ambient; ++j) v[static_cast<std::size_t>(j)] = outer.basis.at(i, j);
        Mat<K> test(span.rows + 1, outer.ambient, FieldOps<K>::zero(model));
        for (int r = 0; r < span.rows; ++r)
            for (int j = 0; j < outer.ambient; ++j) test.at(r, j) = span.at(r, j);
        for (int j = 0; j < outer.ambient; ++j) test.at(span.rows, j) = v[static_cast<std::size_t>(j)];
        if (mat_rank(test) > span.rows) {
            picked.push_back(v);
            span = test;
        }
    }
    if (static_cast<int>(picked.size()) != outer.dim() - inner.dim())
        throw PreconditionError("complement: rank bookkeeping failed");
    return picked;
}

}  // namespace normgeom
