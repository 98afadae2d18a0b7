#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normgeom/rat.hpp"

namespace normgeom {

// Arithmetic in the prime field F_p, p small.
struct Fp {
    std::uint32_t p = 2;
    std::uint32_t v = 0;

    Fp() = default;
    Fp(std::uint32_t prime, long long value) : p(prime) {
        long long r = value % static_cast<long long>(prime);
        if (r < 0) r += prime;
        v = static_cast<std::uint32_t>(r);
    }

    bool is_zero() const { return v == 0; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.p == b.p && a.v == b.v; }
};

Fp fp_add(const Fp& a, const Fp& b);
Fp fp_sub(const Fp& a, const Fp& b);
Fp fp_mul(const Fp& a, const Fp& b);
Fp fp_inv(const Fp& a);
Fp fp_neg(const Fp& a);

// Dense polynomial over F_p, coefficient of T^i at index i, no trailing zeros.
struct FpPoly {
    std::uint32_t p = 2;
    std::vector<std::uint32_t> c;

    FpPoly() = default;
    explicit FpPoly(std::uint32_t prime) : p(prime) {}
    static FpPoly constant(std::uint32_t prime, long long value);
    static FpPoly monomial(std::uint32_t prime, std::uint32_t coeff, std::size_t deg);

    bool is_zero() const { return c.empty(); }
    // deg(0) = -1 by convention.
    long deg() const { return static_cast<long>(c.size()) - 1; }
    // Index of the lowest nonzero coefficient; ord_T of the polynomial.
    long low_order() const;
    std::uint32_t lead() const { return c.back(); }
    void trim();
};

FpPoly poly_add(const FpPoly& a, const FpPoly& b);
FpPoly poly_sub(const FpPoly& a, const FpPoly& b);
FpPoly poly_mul(const FpPoly& a, const FpPoly& b);
FpPoly poly_scale(const FpPoly& a, std::uint32_t s);
// Euclidean division a = q*b + r, deg r < deg b.
void poly_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly poly_gcd(FpPoly a, FpPoly b);
FpPoly poly_monic(const FpPoly& a);
bool poly_eq(const FpPoly& a, const FpPoly& b);
std::string poly_str(const FpPoly& a);

// Element of F_p(T): num/den reduced, den monic. The exact scalar field used
// for the function-field places.
struct FpRatFun {
    FpPoly num;
    FpPoly den;

    FpRatFun() = default;
    FpRatFun(FpPoly n, FpPoly d);
    static FpRatFun zero(std::uint32_t p);
    static FpRatFun one(std::uint32_t p);
    static FpRatFun constant(std::uint32_t p, long long v);
    static FpRatFun variable(std::uint32_t p);

    std::uint32_t prime() const { return den.p; }
    bool is_zero() const { return num.is_zero(); }

    // Valuation at T, or at 1/T (the place at infinity) when at_infinity.
    // nullopt for the zero element.
    std::optional<long> order(bool at_infinity) const;
};

FpRatFun rf_add(const FpRatFun& a, const FpRatFun& b);
FpRatFun rf_sub(const FpRatFun& a, const FpRatFun& b);
FpRatFun rf_mul(const FpRatFun& a, const FpRatFun& b);
FpRatFun rf_div(const FpRatFun& a, const FpRatFun& b);
FpRatFun rf_neg(const FpRatFun& a);
FpRatFun rf_inv(const FpRatFun& a);
bool rf_eq(const FpRatFun& a, const FpRatFun& b);
std::string rf_str(const FpRatFun& a);

inline FpRatFun operator+(const FpRatFun& a, const FpRatFun& b) { return rf_add(a, b); }
inline FpRatFun operator-(const FpRatFun& a, const FpRatFun& b) { return rf_sub(a, b); }
inline FpRatFun operator*(const FpRatFun& a, const FpRatFun& b) { return rf_mul(a, b); }
inline FpRatFun operator/(const FpRatFun& a, const FpRatFun& b) { return rf_div(a, b); }
inline FpRatFun operator-(const FpRatFun& a) { return rf_neg(a); }
inline bool operator==(const FpRatFun& a, const FpRatFun& b) { return rf_eq(a, b); }

}  // namespace normgeom
