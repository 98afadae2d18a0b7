#pragma once

#include "normgeom/boundary.hpp"

namespace normgeom {

// Point of R_{>=0}^{d-1}(P): t-coordinates with t_i > 0 away from the
// pattern's delta set.
template <class Ctx>
struct ApartmentCoord {
    ParabolicType pattern;
    std::vector<typename Ctx::W> t;

    void validate() const {
        if (static_cast<int>(t.size()) != pattern.d - 1) throw PreconditionError("apartment: t length mismatch");
        for (int i = 1; i < pattern.d; ++i) {
            bool zero = Wops<Ctx>::is_zero(t[static_cast<std::size_t>(i - 1)]);
            if (zero && !pattern.I.count(i))
                throw PreconditionError("apartment: zero coordinate outside the pattern");
        }
    }
};

// Diagonal action: t_j -> t_j |a_{j+1}| / |a_j|.
template <class Ctx>
ApartmentCoord<Ctx> apartment_act_diag(const std::vector<typename Ctx::W>& abs_diag,
                                       const ApartmentCoord<Ctx>& x) {
    x.validate();
    if (static_cast<int>(abs_diag.size()) != x.pattern.d)
        throw PreconditionError("apartment: diagonal length mismatch");
    ApartmentCoord<Ctx> out = x;
    for (int j = 1; j < x.pattern.d; ++j) {
        auto f = Wops<Ctx>::div(abs_diag[static_cast<std::size_t>(j)], abs_diag[static_cast<std::size_t>(j - 1)]);
        out.t[static_cast<std::size_t>(j - 1)] = Wops<Ctx>::mul(x.t[static_cast<std::size_t>(j - 1)], f);
    }
    return out;
}

// Block permutation action. sigma is a permutation of {0..d-1} (one-line,
// sigma[i] = image of i) preserving each pattern block; the action is the
// unique one compatible with permuting the weight coordinates r via
// t_j = r_j / r_{j+1}.
template <class Ctx>
ApartmentCoord<Ctx> apartment_act_perm(const std::vector<int>& sigma, const ApartmentCoord<Ctx>& x) {
    x.validate();
    const int d = x.pattern.d;
    if (static_cast<int>(sigma.size()) != d) throw PreconditionError("apartment: permutation length mismatch");

    // Block boundaries: 0 = b_0 < b_1 < ... < b_k = d.
    std::vector<int> bounds{0};
    for (int i : x.pattern.I) bounds.push_back(i);
    bounds.push_back(d);
    std::vector<int> seen(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        int im = sigma[static_cast<std::size_t>(i)];
        if (im < 0 || im >= d || seen[static_cast<std::size_t>(im)]++)
            throw PreconditionError("apartment: not a permutation");
    }
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b)
        for (int i = bounds[b]; i < bounds[b + 1]; ++i)
            if (sigma[static_cast<std::size_t>(i)] < bounds[b] || sigma[static_cast<std::size_t>(i)] >= bounds[b + 1])
                throw PreconditionError("apartment: permutation not block-compatible");

    // f = sigma^{-1} on 1-based positions.
    std::vector<int> f(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) f[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = i;

    ApartmentCoord<Ctx> out = x;
    for (int j = 0; j + 1 < d; ++j) {  // 0-based position pair (j, j+1)
        int fj = f[static_cast<std::size_t>(j)];
        int fj1 = f[static_cast<std::size_t>(j + 1)];
        auto prod = Wops<Ctx>::one();
        if (fj < fj1) {
            for (int k = fj; k < fj1; ++k) prod = Wops<Ctx>::mul(prod, x.t[static_cast<std::size_t>(k)]);
        } else {
            for (int k = fj1; k < fj; ++k) prod = Wops<Ctx>::div(prod, x.t[static_cast<std::size_t>(k)]);
        }
        out.t[static_cast<std::size_t>(j)] = prod;
    }
    return out;
}

// One simplex translate of the fundamental chamber, with the witness point
// realizing membership of the query.
struct CoverElement {
    std::vector<long> diag_exponents;  // pi-exponents of the diagonal part
    std::vector<int> perm;             // one-line permutation of {0..d-1}
    std::vector<Rat> witness;          // log_q coordinates of the chamber point
};

// All (d-1)-simplices h C of the standard apartment containing the point
// with log_q coordinates u (defined up to a common shift); the union of the
// returned translates is a neighborhood of the point.
std::vector<CoverElement> apartment_cover(const std::vector<Rat>& logq_coords);

}  // namespace normgeom
