#include "normgeom/apartment.hpp"

#include <algorithm>
#include <map>

namespace normgeom {

namespace {

// Normal form of a chamber point modulo common shift: subtract the first
// coordinate.
std::vector<Rat> shift_normalize(std::vector<Rat> v) {
    Rat base = v.at(0);
    for (auto& x : v) x -= base;
    return v;
}

// Vertices of hC, as a sorted shift-normalized list; the signature that
// identifies the simplex as a set.
std::vector<std::vector<Rat>> simplex_signature(const std::vector<int>& sigma, const std::vector<long>& n) {
    const int d = static_cast<int>(sigma.size());
    std::vector<std::vector<Rat>> verts;
    for (int k = 0; k < d; ++k) {
        // Vertex of C: c_i = 0 for i <= d-k, 1 beyond (k = 0 is the origin).
        std::vector<Rat> c(static_cast<std::size_t>(d), Rat(0));
        for (int i = d - k; i < d; ++i) c[static_cast<std::size_t>(i)] = 1;
        std::vector<Rat> img(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            int pre = 0;
            for (int i = 0; i < d; ++i)
                if (sigma[static_cast<std::size_t>(i)] == j) pre = i;
            img[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(pre)] - Rat(n[static_cast<std::size_t>(j)]);
        }
        verts.push_back(shift_normalize(std::move(img)));
    }
    std::sort(verts.begin(), verts.end(), [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    });
    return verts;
}

}  // namespace

std::vector<CoverElement> apartment_cover(const std::vector<Rat>& logq_coords) {
    const int d = static_cast<int>(logq_coords.size());
    if (d < 1) throw PreconditionError("apartment cover: empty point");
    if (d == 1) return {CoverElement{{0}, {0}, {Rat(0)}}};

    std::vector<int> sigma(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = i;

    std::map<std::vector<std::vector<Rat>>, CoverElement> found;

    do {
        // w_i = u_{sigma(i)}; search integer offsets m (m_1 = 0) with
        // 0 <= delta_2 <= ... <= delta_d <= 1, delta_i = w_i - w_1 + m_i.
        std::vector<Rat> wdiff(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            wdiff[static_cast<std::size_t>(i)] =
                logq_coords[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] -
                logq_coords[static_cast<std::size_t>(sigma[0])];

        std::vector<long> m(static_cast<std::size_t>(d), 0);
        std::vector<Rat> delta(static_cast<std::size_t>(d), Rat(0));

        auto emit = [&]() {
            // Chamber conditions hold; n_j with n_{sigma(i)} = m_i.
            std::vector<long> n(static_cast<std::size_t>(d), 0);
            for (int i = 0; i < d; ++i) n[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = m[static_cast<std::size_t>(i)];
            CoverElement el;
            el.diag_exponents = n;
            el.perm = sigma;
            el.witness.resize(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) el.witness[static_cast<std::size_t>(i)] = delta[static_cast<std::size_t>(i)];
            auto sig = simplex_signature(sigma, n);
            auto it = found.find(sig);
            bool is_identity = true;
            for (int i = 0; i < d; ++i)
                if (sigma[static_cast<std::size_t>(i)] != i || n[static_cast<std::size_t>(i)] != 0) is_identity = false;
            if (it == found.end() || is_identity) found[sig] = std::move(el);
        };

        // Each m_i is confined to an interval of length one, so at most two
        // integer choices per coordinate.
        auto rec = [&](auto&& self, int i) -> void {
            if (i == d) {
                emit();
                return;
            }
            // Bounds: delta_{i-1} <= delta_i and delta_i <= 1.
            Rat lo = delta[static_cast<std::size_t>(i - 1)];
            Rat hi(1);
            // delta_i = wdiff_i + m_i
            Rat mlo = lo - wdiff[static_cast<std::size_t>(i)];
            Rat mhi = hi - wdiff[static_cast<std::size_t>(i)];
            long first = static_cast<long>(mpz_class(mpz_class(mlo.get_num()) / mlo.get_den()).get_si());
            for (long cand = first - 2; cand <= first + 3; ++cand) {
                Rat mr(cand);
                if (mr < mlo || mr > mhi) continue;
                m[static_cast<std::size_t>(i)] = cand;
                delta[static_cast<std::size_t>(i)] = wdiff[static_cast<std::size_t>(i)] + mr;
                self(self, i + 1);
            }
        };
        rec(rec, 1);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    std::vector<CoverElement> out;
    out.reserve(found.size());
    for (auto& [sig, el] : found) out.push_back(std::move(el));
    return out;
}

}  // namespace normgeom
