#pragma once

#include <map>
#include <string>

#include "normgeom/rat.hpp"

namespace normgeom {

// Nonnegative real number stored in factored form prod_p p^(e_p) with prime
// bases and exact rational exponents, plus a distinguished zero. Closed under
// multiplication, division and rational powers, with decidable equality:
// two factored values agree iff their exponent maps agree. Strict comparison
// of distinct values goes through long-double logarithms, which is far more
// precision than the desk-scale gaps these values ever exhibit.
//
// This is the weight/value scalar for all non-archimedean norm computations:
// plain positive rationals embed exactly, and the d-th roots introduced by
// determinant-normalized presentations stay exact instead of decaying to
// floating point.
class PosReal {
public:
    PosReal() = default;  // zero

    static PosReal zero() { return PosReal(); }
    static PosReal one();
    static PosReal from_rat(const Rat& q);        // q >= 0
    static PosReal from_int(long n);
    static PosReal prime_power(const Int& p, const Rat& e);  // p prime

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && f_.empty(); }
    bool is_rational() const;
    Rat to_rat() const;  // requires is_rational()
    double to_double() const;
    long double log_value() const;  // requires nonzero

    PosReal mul(const PosReal& o) const;
    PosReal div(const PosReal& o) const;  // o nonzero
    PosReal pow(const Rat& e) const;      // 0^e = 0 for e > 0
    PosReal inv() const { return PosReal::one().div(*this); }

    bool eq(const PosReal& o) const;
    // -1, 0, +1
    int cmp(const PosReal& o) const;
    bool lt(const PosReal& o) const { return cmp(o) < 0; }
    bool le(const PosReal& o) const { return cmp(o) <= 0; }

    std::string str() const;
    const std::map<Int, Rat>& factors() const { return f_; }

    friend bool operator==(const PosReal& a, const PosReal& b) { return a.eq(b); }

private:
    bool zero_ = true;
    std::map<Int, Rat> f_;  // prime -> nonzero exponent
};

inline PosReal operator*(const PosReal& a, const PosReal& b) { return a.mul(b); }
inline PosReal operator/(const PosReal& a, const PosReal& b) { return a.div(b); }

PosReal pr_max(const PosReal& a, const PosReal& b);

// Factors n > 0; trial division with a Pollard rho fallback.
std::map<Int, long> factor_int(Int n);

}  // namespace normgeom
