#include "normgeom/decomp.hpp"

namespace normgeom {

// Column-by-column pivot sweep: in column j take the lowest unused nonzero
// row i, scale it to 1 with a right factor, clear above with row operations
// (upper-triangular on the left) and clear to the right with column
// operations (upper-triangular on the right). What remains is exactly w.
BruhatFactors bruhat_residue(const Mat<Fp>& g) {
    if (g.rows != g.cols) throw PreconditionError("bruhat: non-square matrix");
    const std::uint32_t p = g.model().p;
    const int d = g.rows;
    if (FieldOps<Fp>::is_zero(mat_det(g))) throw PreconditionError("bruhat: singular matrix");

    Mat<Fp> m = g;
    Mat<Fp> binv = Mat<Fp>::identity(d, Fp(p, 0));   // accumulated row ops, upper triangular
    Mat<Fp> b2inv = Mat<Fp>::identity(d, Fp(p, 0));  // accumulated column ops, upper triangular
    std::vector<int> w(static_cast<std::size_t>(d), -1);
    std::vector<bool> used(static_cast<std::size_t>(d), false);

    for (int j = 0; j < d; ++j) {
        int piv = -1;
        for (int i = d - 1; i >= 0; --i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            if (!m.at(i, j).is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) throw PreconditionError("bruhat: singular matrix");
        used[static_cast<std::size_t>(piv)] = true;
        w[static_cast<std::size_t>(j)] = piv;

        Fp inv = fp_inv(m.at(piv, j));
        for (int i = 0; i < d; ++i) {  // scale column j (right op, diagonal)
            m.at(i, j) = fp_mul(m.at(i, j), inv);
            b2inv.at(i, j) = fp_mul(b2inv.at(i, j), inv);
        }
        for (int i = 0; i < piv; ++i) {  // clear above the pivot: row_i -= m[i][j] * row_piv
            if (m.at(i, j).is_zero()) continue;
            Fp f = m.at(i, j);
            for (int c = 0; c < d; ++c) {
                m.at(i, c) = fp_sub(m.at(i, c), fp_mul(f, m.at(piv, c)));
                binv.at(i, c) = fp_sub(binv.at(i, c), fp_mul(f, binv.at(piv, c)));
            }
        }
        for (int c = j + 1; c < d; ++c) {  // clear right of the pivot: col_c -= m[piv][c] * col_j
            if (m.at(piv, c).is_zero()) continue;
            Fp f = m.at(piv, c);
            for (int i = 0; i < d; ++i) {
                m.at(i, c) = fp_sub(m.at(i, c), fp_mul(f, m.at(i, j)));
                b2inv.at(i, c) = fp_sub(b2inv.at(i, c), fp_mul(f, b2inv.at(i, j)));
            }
        }
    }

    BruhatFactors out;
    out.w = std::move(w);
    out.b = mat_inverse(binv);
    out.b2 = mat_inverse(b2inv);
    return out;
}

}  // namespace normgeom
