#include "normgeom/place.hpp"

#include <cmath>

namespace normgeom {

bool is_prime(long p) {
    if (p < 2) return false;
    Int n(p);
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

Place Place::padic(long p) {
    if (!is_prime(p)) throw PreconditionError("place: p must be prime");
    return {PlaceKind::padic, p, false};
}

Place Place::laurent(long p, bool at_infinity) {
    if (!is_prime(p)) throw PreconditionError("place: p must be prime");
    return {PlaceKind::laurent, p, at_infinity};
}

long Place::residue_size() const {
    if (archimedean()) throw PreconditionError("place: residue field of archimedean place");
    return p;
}

double AbsValue::to_double(long q) const {
    if (archimedean) return value;
    if (zero) return 0.0;
    return std::pow(static_cast<double>(q), static_cast<double>(-exponent));
}

PosReal AbsValue::to_posreal(long q) const {
    if (archimedean) throw PreconditionError("absvalue: archimedean value has no exact form");
    if (zero) return PosReal::zero();
    return PosReal::prime_power(Int(q), Rat(-exponent));
}

AbsValue normalized_abs(const LocalScalar& a, const Place& v) {
    switch (v.kind) {
        case PlaceKind::real: {
            if (!std::holds_alternative<double>(a)) throw PreconditionError("abs: scalar kind mismatch");
            return AbsValue::arch(std::fabs(std::get<double>(a)));
        }
        case PlaceKind::complex_: {
            if (!std::holds_alternative<Cplx>(a)) throw PreconditionError("abs: scalar kind mismatch");
            // Square of the usual absolute value.
            return AbsValue::arch(std::norm(std::get<Cplx>(a)));
        }
        case PlaceKind::padic: {
            if (!std::holds_alternative<Rat>(a)) throw PreconditionError("abs: scalar kind mismatch");
            auto val = rat_valuation(std::get<Rat>(a), Int(v.p));
            if (!val) return AbsValue::nonarch_zero();
            return AbsValue::nonarch(*val);
        }
        case PlaceKind::laurent: {
            if (!std::holds_alternative<FpRatFun>(a)) throw PreconditionError("abs: scalar kind mismatch");
            const auto& f = std::get<FpRatFun>(a);
            if (static_cast<long>(f.prime()) != v.p) throw PreconditionError("abs: scalar characteristic mismatch");
            auto ord = f.order(v.at_infinity);
            if (!ord) return AbsValue::nonarch_zero();
            return AbsValue::nonarch(*ord);
        }
    }
    throw PreconditionError("abs: unknown place kind");
}

ValOrInf valuation(const LocalScalar& a, const Place& v) {
    if (v.archimedean()) throw PreconditionError("valuation: unsupported archimedean place");
    AbsValue w = normalized_abs(a, v);
    if (w.zero) return {true, 0};
    return {false, w.exponent};
}

}  // namespace normgeom
