#ifndef AXEL_RATIONAL_HPP
#define AXEL_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace axel {

// Exact rational arithmetic.  mpq_class keeps gcd(num,den)=1 and den>0
// after every operation, which is exactly the canonical form we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) {
    return r.get_str();
}

inline Integer numer(const Rational& r) { return r.get_num(); }
inline Integer denom(const Rational& r) { return r.get_den(); }

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace axel

#endif
