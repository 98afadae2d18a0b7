#include "normgeom/topolab.hpp"

namespace normgeom {

double PiecewiseLinear::operator()(double x) const {
    if (pts.empty()) throw PreconditionError("halfplane: empty table");
    if (pts.size() == 1) return pts.front().second;
    std::size_t hi = 1;
    while (hi + 1 < pts.size() && pts[hi].first < x) ++hi;
    auto [x0, y0] = pts[hi - 1];
    auto [x1, y1] = pts[hi];
    if (x1 == x0) return y0;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

bool halfplane_member_uc(const HalfPlanePoint& z, double c) {
    if (c <= 0) throw PreconditionError("halfplane: c must be positive");
    return z.infinity || z.y >= c;
}

bool halfplane_member_uf(const HalfPlanePoint& z, const PiecewiseLinear& f) {
    return z.infinity || z.y >= f(z.x);
}

}  // namespace normgeom
