#include "normgeom/posreal.hpp"

#include <cmath>
#include <cstdlib>

namespace normgeom {

namespace {

Int pollard_rho(const Int& n) {
    // n odd composite, no small factors.
    Int x = 2, y = 2, d = 1, c = 1;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        Int diff = x > y ? Int(x - y) : Int(y - x);
        if (diff == 0) {
            ++c;  // cycle without factor; restart with a new polynomial
            x = y = 2;
            d = 1;
            continue;
        }
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d;
}

void factor_into(Int n, std::map<Int, long>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        ++out[n];
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % p == 0) {
            ++out[Int(p)];
            factor_into(n / p, out);
            return;
        }
    }
    Int d = n;
    long limit = 100000;
    for (long p = 17; p <= limit; p += 2) {
        if (n % p == 0) {
            ++out[Int(p)];
            factor_into(n / p, out);
            return;
        }
        Int sq(p);
        if (sq * sq > n) {
            ++out[n];
            return;
        }
    }
    d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::map<Int, long> factor_int(Int n) {
    if (n <= 0) throw PreconditionError("factor: nonpositive integer");
    std::map<Int, long> out;
    factor_into(n, out);
    return out;
}

PosReal PosReal::one() {
    PosReal r;
    r.zero_ = false;
    return r;
}

PosReal PosReal::from_rat(const Rat& q) {
    if (q < 0) throw PreconditionError("posreal: negative value");
    if (q == 0) return PosReal::zero();
    PosReal r = PosReal::one();
    for (auto& [p, e] : factor_int(q.get_num())) r.f_[p] += e;
    for (auto& [p, e] : factor_int(q.get_den())) r.f_[p] -= e;
    std::erase_if(r.f_, [](const auto& kv) { return kv.second == 0; });
    return r;
}

PosReal PosReal::from_int(long n) { return from_rat(Rat(n)); }

PosReal PosReal::prime_power(const Int& p, const Rat& e) {
    PosReal r = PosReal::one();
    if (e != 0) r.f_[p] = e;
    return r;
}

bool PosReal::is_rational() const {
    if (zero_) return true;
    for (auto& [p, e] : f_)
        if (e.get_den() != 1) return false;
    return true;
}

Rat PosReal::to_rat() const {
    if (zero_) return Rat(0);
    Rat r(1);
    for (auto& [p, e] : f_) {
        if (e.get_den() != 1) throw PreconditionError("posreal: irrational value has no rational form");
        if (!e.get_num().fits_slong_p()) throw PreconditionError("posreal: exponent overflow");
        r *= rat_pow(Rat(p), e.get_num().get_si());
    }
    return r;
}

long double PosReal::log_value() const {
    if (zero_) throw PreconditionError("posreal: log of zero");
    long double s = 0;
    for (auto& [p, e] : f_) s += static_cast<long double>(e.get_d()) * std::log(static_cast<long double>(p.get_d()));
    return s;
}

double PosReal::to_double() const {
    if (zero_) return 0.0;
    return static_cast<double>(std::exp(log_value()));
}

PosReal PosReal::mul(const PosReal& o) const {
    if (zero_ || o.zero_) return PosReal::zero();
    PosReal r = *this;
    for (auto& [p, e] : o.f_) {
        r.f_[p] += e;
        if (r.f_[p] == 0) r.f_.erase(p);
    }
    return r;
}

PosReal PosReal::div(const PosReal& o) const {
    if (o.zero_) throw PreconditionError("posreal: division by zero");
    if (zero_) return PosReal::zero();
    PosReal r = *this;
    for (auto& [p, e] : o.f_) {
        r.f_[p] -= e;
        if (r.f_[p] == 0) r.f_.erase(p);
    }
    return r;
}

PosReal PosReal::pow(const Rat& e) const {
    if (zero_) {
        if (e <= 0) throw PreconditionError("posreal: zero to nonpositive power");
        return PosReal::zero();
    }
    if (e == 0) return PosReal::one();
    PosReal r = PosReal::one();
    for (auto& [p, x] : f_) {
        Rat ne = x * e;
        if (ne != 0) r.f_[p] = ne;
    }
    return r;
}

bool PosReal::eq(const PosReal& o) const {
    if (zero_ != o.zero_) return false;
    return zero_ || f_ == o.f_;
}

int PosReal::cmp(const PosReal& o) const {
    if (eq(o)) return 0;
    if (zero_) return -1;
    if (o.zero_) return 1;
    long double diff = log_value() - o.log_value();
    return diff < 0 ? -1 : 1;
}

std::string PosReal::str() const {
    if (zero_) return "0";
    if (is_rational()) return rat_str(to_rat());
    std::string s;
    for (auto& [p, e] : f_) {
        if (!s.empty()) s += " * ";
        s += p.get_str() + "^(" + rat_str(e) + ")";
    }
    return s;
}

PosReal pr_max(const PosReal& a, const PosReal& b) { return a.cmp(b) >= 0 ? a : b; }

}  // namespace normgeom
