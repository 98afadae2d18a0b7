#pragma once

#include <array>
#include <complex>
#include <map>

#include "support.hpp"

// Independent oracles used by both the unit suites and the acceptance
// gate. These deliberately avoid the implementation paths they check.

namespace oracles {

using namespace normgeom;
using namespace testsupport;

// Inf-over-lifts value of the induced subquotient norm. Candidates: exact
// coordinate-cancellation points of the lift coordinates, a valuation grid
// around them, and zero; archimedean places use the exact projection
// minimizer of the Gram form.
template <class Ctx>
typename Ctx::W subq_inf_oracle(const NormRep<Ctx>& mu, const Subspace<typename Ctx::F>& hpp,
                                const std::vector<typename Ctx::K>& x0) {
    using K = typename Ctx::K;
    using F = FieldOps<K>;
    const Ctx& ctx = mu.ctx;
    const int k = hpp.dim();
    std::vector<std::vector<K>> s;
    for (int i = 0; i < k; ++i) {
        std::vector<K> row(static_cast<std::size_t>(hpp.ambient));
        for (int j = 0; j < hpp.ambient; ++j) row[static_cast<std::size_t>(j)] = ctx.embed(hpp.basis.at(i, j));
        s.push_back(std::move(row));
    }
    auto lift_at = [&](const std::vector<K>& c) {
        std::vector<K> v = x0;
        for (int i = 0; i < k; ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = F::add(v[j], F::mul(c[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)][j]));
        return v;
    };

    if constexpr (Ctx::archimedean) {
        if (k == 0) return norm_eval(mu, x0);
        Mat<K> g = norm_gram(mu);
        Mat<K> smat(static_cast<int>(x0.size()), k, ctx.k_model());
        for (int i = 0; i < k; ++i) smat.set_col(i, s[static_cast<std::size_t>(i)]);
        Mat<K> sgs = mat_mul(mat_conj_transpose(smat), mat_mul(g, smat));
        auto rhs = mat_apply(mat_mul(mat_conj_transpose(smat), g), x0);
        for (auto& x : rhs) x = F::neg(x);
        auto c = mat_solve(sgs, rhs);
        if (!c) throw PreconditionError("oracle: projection system is singular");
        return norm_eval(mu, lift_at(*c));
    } else {
        std::vector<std::vector<K>> s_mu;
        for (const auto& row : s) s_mu.push_back(norm_coords(mu, row));
        auto a0 = norm_coords(mu, x0);
        const std::size_t dim = a0.size();

        std::vector<std::vector<K>> cands;
        cands.emplace_back(static_cast<std::size_t>(k), F::zero(ctx.k_model()));
        if (k == 1) {
            for (std::size_t j = 0; j < dim; ++j)
                if (!F::is_zero(s_mu[0][j]))
                    cands.push_back({F::neg(F::div(a0[j], s_mu[0][j]))});
        } else if (k == 2) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (!F::is_zero(s_mu[0][j]))
                    cands.push_back({F::neg(F::div(a0[j], s_mu[0][j])), F::zero(ctx.k_model())});
                if (!F::is_zero(s_mu[1][j]))
                    cands.push_back({F::zero(ctx.k_model()), F::neg(F::div(a0[j], s_mu[1][j]))});
                for (std::size_t l = j + 1; l < dim; ++l) {
                    Mat<K> m2(2, 2, ctx.k_model());
                    m2.at(0, 0) = s_mu[0][j];
                    m2.at(0, 1) = s_mu[1][j];
                    m2.at(1, 0) = s_mu[0][l];
                    m2.at(1, 1) = s_mu[1][l];
                    if (F::is_zero(mat_det(m2))) continue;
                    std::vector<K> rhs{F::neg(a0[j]), F::neg(a0[l])};
                    auto c = mat_solve(m2, rhs);
                    if (c) cands.push_back(*c);
                }
            }
        }
        std::vector<std::vector<K>> grid = cands;
        for (const auto& c : cands)
            for (int e = -6; e <= 6; ++e)
                for (int i = 0; i < k; ++i) {
                    auto cc = c;
                    cc[static_cast<std::size_t>(i)] =
                        F::add(cc[static_cast<std::size_t>(i)], IwasawaTriple<Ctx>::uniformizer_power(ctx, e));
                    grid.push_back(cc);
                }
        PosReal best;
        bool first = true;
        for (const auto& c : grid) {
            PosReal v = norm_eval(mu, lift_at(c));
            if (first || v.lt(best)) {
                best = v;
                first = false;
            }
        }
        return best;
    }
}

// Ball of PGL_2(Z) words in S, T, T^{-1} up to the given length, deduped.
inline const std::vector<Mat<Rat>>& word_ball(int max_len = 12) {
    static std::map<int, std::vector<Mat<Rat>>> cache;
    auto it = cache.find(max_len);
    if (it != cache.end()) return it->second;
    auto key = [](const Mat<Rat>& m) {
        std::array<long, 4> k{};
        int sign = 0;
        for (int i = 0; i < 4; ++i) {
            long v = static_cast<long>(m.a[static_cast<std::size_t>(i)].get_d());
            if (sign == 0 && v != 0) sign = v > 0 ? 1 : -1;
            k[static_cast<std::size_t>(i)] = v;
        }
        for (auto& v : k) v *= sign;
        return k;
    };
    Mat<Rat> s(2, 2, Rat(0)), t(2, 2, Rat(0)), tinv(2, 2, Rat(0));
    s.at(0, 1) = -1;
    s.at(1, 0) = 1;
    t = Mat<Rat>::identity(2, Rat(0));
    t.at(0, 1) = 1;
    tinv = Mat<Rat>::identity(2, Rat(0));
    tinv.at(0, 1) = -1;
    std::map<std::array<long, 4>, Mat<Rat>> seen;
    std::vector<Mat<Rat>> frontier{Mat<Rat>::identity(2, Rat(0))};
    seen[key(frontier[0])] = frontier[0];
    for (int len = 0; len < max_len; ++len) {
        std::vector<Mat<Rat>> next;
        for (const auto& w : frontier)
            for (const auto* gen : {&s, &t, &tinv}) {
                Mat<Rat> prod = mat_mul(*gen, w);
                auto k = key(prod);
                if (seen.emplace(k, prod).second) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    std::vector<Mat<Rat>> out;
    out.reserve(seen.size());
    for (auto& [k, m] : seen) out.push_back(m);
    return cache.emplace(max_len, std::move(out)).first->second;
}

inline std::complex<double> gram_to_z(const Mat<Rat>& g) {
    double a = g.at(0, 0).get_d(), b = g.at(0, 1).get_d(), c = g.at(1, 1).get_d();
    return {-b / a, std::sqrt(a * c - b * b) / a};
}

inline std::complex<double> moebius(const Mat<Rat>& g, std::complex<double> z) {
    double a = g.at(0, 0).get_d(), b = g.at(0, 1).get_d(), c = g.at(1, 0).get_d(), d = g.at(1, 1).get_d();
    std::complex<double> w = (a * z + b) / (c * z + d);
    if (w.imag() < 0) w = std::conj(w);
    return w;
}

inline Mat<Rat> rnd_gram(Rng& rng, int d, long spread = 5) {
    Mat<Rat> b(d, d, Rat(0));
    for (auto& x : b.a) x = Rat(rnd_int(rng, -spread, spread));
    Mat<Rat> g = mat_mul(mat_transpose(b), b);
    for (int i = 0; i < d; ++i) g.at(i, i) += 1;
    return g;
}

}  // namespace oracles
