#pragma once

#include <complex>
#include <variant>

#include "normgeom/fp.hpp"
#include "normgeom/posreal.hpp"
#include "normgeom/rat.hpp"

namespace normgeom {

using Cplx = std::complex<double>;

enum class PlaceKind { real, complex_, padic, laurent };

// A place of the ambient global field together with its normalized absolute
// value. Non-archimedean residue fields are prime: q = p. For laurent places
// the uniformizer is T, or 1/T when at_infinity is set.
struct Place {
    PlaceKind kind = PlaceKind::real;
    long p = 0;
    bool at_infinity = false;

    static Place real() { return {PlaceKind::real, 0, false}; }
    static Place complex_() { return {PlaceKind::complex_, 0, false}; }
    static Place padic(long p);
    static Place laurent(long p, bool at_infinity = false);

    bool archimedean() const { return kind == PlaceKind::real || kind == PlaceKind::complex_; }
    long residue_size() const;  // q, non-archimedean only

    friend bool operator==(const Place& a, const Place& b) {
        return a.kind == b.kind && a.p == b.p && a.at_infinity == b.at_infinity;
    }
};

bool is_prime(long p);

// Scalar of the completion at one of the four supported place kinds. Real
// scalars are doubles, complex ones complex doubles; p-adic and laurent
// scalars stay in the dense subfield (Q, resp. F_p(T)) and are exact.
using LocalScalar = std::variant<double, Cplx, Rat, FpRatFun>;

// Value of the normalized absolute value. Archimedean values are floats;
// non-archimedean ones are stored as q^(-exponent), so multiplicativity is
// exact in the encoding.
struct AbsValue {
    bool archimedean = true;
    double value = 0.0;
    bool zero = false;
    long exponent = 0;

    static AbsValue arch(double v) { return {true, v, v == 0.0, 0}; }
    static AbsValue nonarch_zero() { return {false, 0.0, true, 0}; }
    static AbsValue nonarch(long exponent) { return {false, 0.0, false, exponent}; }

    double to_double(long q) const;
    PosReal to_posreal(long q) const;
};

AbsValue normalized_abs(const LocalScalar& a, const Place& v);

struct ValOrInf {
    bool infinite = false;
    long v = 0;
};

// v_p (resp. ord at the uniformizer); v(0) = +infinity. Archimedean places
// are rejected.
ValOrInf valuation(const LocalScalar& a, const Place& v);

}  // namespace normgeom
