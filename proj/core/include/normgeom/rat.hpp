#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace normgeom {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) as long as they are constructed through make_rat / parse_rat.
using Int = mpz_class;
using Rat = mpq_class;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated operation precondition; the message names the precondition.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw PreconditionError("rational: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Accepts "num", "num/den", with optional sign.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rat(Int(s), 1);
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal: " + s);
    }
}

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0) {
        if (e < 0) throw PreconditionError("rational: 0^negative");
        return Rat(0);
    }
    Rat num, den;
    mpz_pow_ui(num.get_num().get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(num.get_den().get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e < 0) {
        if (num == 0) throw PreconditionError("rational: 0^negative");
        num = 1 / num;
    }
    num.canonicalize();
    return num;
}

// p-adic valuation of a nonzero integer.
inline long int_valuation(Int n, const Int& p) {
    if (n == 0) throw PreconditionError("valuation: zero integer");
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

// v_p on Q; nullopt encodes v(0) = +infinity.
inline std::optional<long> rat_valuation(const Rat& q, const Int& p) {
    if (q == 0) return std::nullopt;
    return int_valuation(q.get_num(), p) - int_valuation(q.get_den(), p);
}

}  // namespace normgeom
