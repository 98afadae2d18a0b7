#include "normgeom/fp.hpp"

#include <algorithm>

namespace normgeom {

namespace {
std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

void check_same_prime(std::uint32_t a, std::uint32_t b) {
    if (a != b) throw PreconditionError("fp: mixed characteristics");
}
}  // namespace

Fp fp_add(const Fp& a, const Fp& b) {
    check_same_prime(a.p, b.p);
    Fp r;
    r.p = a.p;
    r.v = (a.v + b.v) % a.p;
    return r;
}

Fp fp_sub(const Fp& a, const Fp& b) {
    check_same_prime(a.p, b.p);
    Fp r;
    r.p = a.p;
    r.v = (a.v + a.p - b.v) % a.p;
    return r;
}

Fp fp_mul(const Fp& a, const Fp& b) {
    check_same_prime(a.p, b.p);
    Fp r;
    r.p = a.p;
    r.v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % a.p);
    return r;
}

Fp fp_inv(const Fp& a) {
    if (a.v == 0) throw PreconditionError("fp: inverse of zero");
    Fp r;
    r.p = a.p;
    r.v = mod_pow(a.v, a.p - 2, a.p);
    return r;
}

Fp fp_neg(const Fp& a) {
    Fp r;
    r.p = a.p;
    r.v = a.v == 0 ? 0 : a.p - a.v;
    return r;
}

FpPoly FpPoly::constant(std::uint32_t prime, long long value) {
    FpPoly r(prime);
    Fp f(prime, value);
    if (f.v != 0) r.c.push_back(f.v);
    return r;
}

FpPoly FpPoly::monomial(std::uint32_t prime, std::uint32_t coeff, std::size_t deg) {
    FpPoly r(prime);
    coeff %= prime;
    if (coeff == 0) return r;
    r.c.assign(deg + 1, 0);
    r.c[deg] = coeff;
    return r;
}

long FpPoly::low_order() const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<long>(i);
    return -1;
}

void FpPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly poly_add(const FpPoly& a, const FpPoly& b) {
    check_same_prime(a.p, b.p);
    FpPoly r(a.p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        std::uint32_t s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = s % a.p;
    }
    r.trim();
    return r;
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b) {
    check_same_prime(a.p, b.p);
    FpPoly r(a.p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        std::uint32_t av = i < a.c.size() ? a.c[i] : 0;
        std::uint32_t bv = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = (av + a.p - bv) % a.p;
    }
    r.trim();
    return r;
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b) {
    check_same_prime(a.p, b.p);
    FpPoly r(a.p);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            std::uint64_t t = r.c[i + j] + static_cast<std::uint64_t>(a.c[i]) * b.c[j];
            r.c[i + j] = static_cast<std::uint32_t>(t % a.p);
        }
    }
    r.trim();
    return r;
}

FpPoly poly_scale(const FpPoly& a, std::uint32_t s) {
    FpPoly r(a.p);
    s %= a.p;
    if (s == 0) return r;
    r.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        r.c[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.c[i]) * s % a.p);
    r.trim();
    return r;
}

void poly_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
    check_same_prime(a.p, b.p);
    if (b.is_zero()) throw PreconditionError("fp poly: division by zero");
    q = FpPoly(a.p);
    r = a;
    if (r.deg() < b.deg()) return;
    q.c.assign(static_cast<std::size_t>(r.deg() - b.deg()) + 1, 0);
    std::uint32_t lead_inv = mod_pow(b.lead(), a.p - 2, a.p);
    while (!r.is_zero() && r.deg() >= b.deg()) {
        std::size_t shift = static_cast<std::size_t>(r.deg() - b.deg());
        std::uint32_t coef = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r.lead()) * lead_inv % a.p);
        q.c[shift] = coef;
        FpPoly t = poly_mul(FpPoly::monomial(a.p, coef, shift), b);
        r = poly_sub(r, t);
    }
    q.trim();
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return poly_monic(a);
}

FpPoly poly_monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, mod_pow(a.lead(), a.p - 2, a.p));
}

bool poly_eq(const FpPoly& a, const FpPoly& b) { return a.p == b.p && a.c == b.c; }

std::string poly_str(const FpPoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || a.c[i] != 1) s += std::to_string(a.c[i]);
        if (i >= 1) {
            if (a.c[i] != 1) s += "*";
            s += "T";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FpRatFun::FpRatFun(FpPoly n, FpPoly d) {
    check_same_prime(n.p, d.p);
    if (d.is_zero()) throw PreconditionError("fp ratfun: zero denominator");
    if (n.is_zero()) {
        num = FpPoly(n.p);
        den = FpPoly::constant(n.p, 1);
        return;
    }
    FpPoly g = poly_gcd(n, d);
    FpPoly q, r;
    poly_divmod(n, g, q, r);
    num = q;
    poly_divmod(d, g, q, r);
    den = q;
    std::uint32_t lead_inv = mod_pow(den.lead(), n.p - 2, n.p);
    num = poly_scale(num, lead_inv);
    den = poly_scale(den, lead_inv);
}

FpRatFun FpRatFun::zero(std::uint32_t p) { return FpRatFun(FpPoly(p), FpPoly::constant(p, 1)); }
FpRatFun FpRatFun::one(std::uint32_t p) { return FpRatFun(FpPoly::constant(p, 1), FpPoly::constant(p, 1)); }
FpRatFun FpRatFun::constant(std::uint32_t p, long long v) {
    return FpRatFun(FpPoly::constant(p, v), FpPoly::constant(p, 1));
}
FpRatFun FpRatFun::variable(std::uint32_t p) {
    return FpRatFun(FpPoly::monomial(p, 1, 1), FpPoly::constant(p, 1));
}

std::optional<long> FpRatFun::order(bool at_infinity) const {
    if (is_zero()) return std::nullopt;
    if (at_infinity) return den.deg() - num.deg();
    return num.low_order() - den.low_order();
}

FpRatFun rf_add(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)), poly_mul(a.den, b.den));
}

FpRatFun rf_sub(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(poly_sub(poly_mul(a.num, b.den), poly_mul(b.num, a.den)), poly_mul(a.den, b.den));
}

FpRatFun rf_mul(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

FpRatFun rf_div(const FpRatFun& a, const FpRatFun& b) {
    if (b.is_zero()) throw PreconditionError("fp ratfun: division by zero");
    return FpRatFun(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
}

FpRatFun rf_neg(const FpRatFun& a) {
    FpRatFun r = a;
    r.num = poly_scale(a.num, a.num.p - 1);
    return r;
}

FpRatFun rf_inv(const FpRatFun& a) {
    if (a.is_zero()) throw PreconditionError("fp ratfun: inverse of zero");
    return FpRatFun(a.den, a.num);
}

bool rf_eq(const FpRatFun& a, const FpRatFun& b) { return poly_eq(a.num, b.num) && poly_eq(a.den, b.den); }

std::string rf_str(const FpRatFun& a) {
    if (poly_eq(a.den, FpPoly::constant(a.den.p, 1))) return poly_str(a.num);
    return "(" + poly_str(a.num) + ")/(" + poly_str(a.den) + ")";
}

}  // namespace normgeom
