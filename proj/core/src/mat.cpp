#include "normgeom/mat.hpp"

#include <algorithm>

namespace normgeom {

std::vector<double> sym_eigenvalues(Mat<double> s) {
    if (s.rows != s.cols) throw PreconditionError("eig: non-square matrix");
    int n = s.rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += s.at(i, j) * s.at(i, j);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = s.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (s.at(q, q) - s.at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = s.at(k, p), akq = s.at(k, q);
                    s.at(k, p) = c * akp - sn * akq;
                    s.at(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = s.at(p, k), aqk = s.at(q, k);
                    s.at(p, k) = c * apk - sn * aqk;
                    s.at(q, k) = sn * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = s.at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> herm_eigenvalues(Mat<Cplx> h) {
    if (h.rows != h.cols) throw PreconditionError("eig: non-square matrix");
    int n = h.rows;
    for (int sweep = 0; sweep < 120; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::norm(h.at(i, j));
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Cplx apq = h.at(p, q);
                double m = std::abs(apq);
                if (m < 1e-300) continue;
                // Phase rotation makes the pivot real, then a real Jacobi step.
                Cplx phase = apq / m;
                double app = h.at(p, p).real(), aqq = h.at(q, q).real();
                double theta = (aqq - app) / (2 * m);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                Cplx cp = c, sp = sn * phase;
                for (int k = 0; k < n; ++k) {
                    Cplx akp = h.at(k, p), akq = h.at(k, q);
                    h.at(k, p) = cp * akp - std::conj(sp) * akq;
                    h.at(k, q) = sp * akp + cp * akq;
                }
                for (int k = 0; k < n; ++k) {
                    Cplx apk = h.at(p, k), aqk = h.at(q, k);
                    h.at(p, k) = cp * apk - sp * aqk;
                    h.at(q, k) = std::conj(sp) * apk + cp * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = h.at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace normgeom
