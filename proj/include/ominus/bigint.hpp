#ifndef OMINUS_BIGINT_HPP
#define OMINUS_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace ominus {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigInt ipow(long base, unsigned long exponent) { return ipow(BigInt(base), exponent); }

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// binomial(m, k) for a (possibly astronomically large) nonnegative m and a
/// small k, as a falling-factorial product. Zero when k < 0 or k > m.
inline BigInt binomial(const BigInt& m, long k) {
    if (m < 0) throw DomainError("binomial: negative upper argument " + m.get_str());
    if (k < 0 || BigInt(k) > m) return 0;
    if (m.fits_ulong_p()) {
        BigInt r;
        mpz_bin_uiui(r.get_mpz_t(), m.get_ui(), static_cast<unsigned long>(k));
        return r;
    }
    BigInt num = 1;
    for (long i = 0; i < k; ++i) num *= m - i;
    return num / factorial(static_cast<unsigned long>(k));
}

inline BigInt binomial(long m, long k) { return binomial(BigInt(m), k); }

/// num / den, throwing when the division leaves a remainder.
inline BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (den == 0) throw ExactnessError(std::string(what) + ": division by zero");
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw ExactnessError(std::string(what) + ": " + num.get_str() + " is not divisible by " + den.get_str());
    BigInt r;
    mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline std::string to_decimal(const BigRational& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_str(10);
}

}  // namespace ominus

#endif
