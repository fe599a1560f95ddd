#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace permatrellis {

/// Exact scalar domain: arbitrary-precision rationals, kept canonical
/// (lowest terms, positive denominator) by GMP.
using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Rationals serialize as "p" or "p/q"; floats as decimal literals.
inline std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string str(s);
    auto slash = str.find('/');
    try {
        if (slash == std::string::npos) {
            // Accept plain decimals ("1.25") as exact rationals.
            auto dot = str.find('.');
            if (dot == std::string::npos) return Rational(BigInt(str));
            std::string digits = str.substr(0, dot) + str.substr(dot + 1);
            std::size_t frac_len = str.size() - dot - 1;
            Rational r(BigInt(digits), pow_int(BigInt(10), frac_len));
            r.canonicalize();
            return r;
        }
        Rational r(BigInt(str.substr(0, slash)), BigInt(str.substr(slash + 1)));
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + str);
    }
}

}  // namespace permatrellis
