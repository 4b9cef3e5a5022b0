#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace logcalc {

// Exact rational arithmetic. All densities, weights and tables are kept
// rational end to end; floats enter only through logarithms.
using Rational = mpq_class;

namespace rat {

inline Rational of(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or a plain integer "p". Denominator must be positive after
// canonicalization; "3/-4" is rejected rather than silently normalized.
inline Rational parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r(mpz_class(text));
            return r;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw std::invalid_argument("bad rational");
        mpz_class d(den);
        if (d <= 0) throw std::invalid_argument("rational denominator must be positive: " + text);
        Rational r(mpz_class(num), d);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational literal: '" + text + "'");
    }
}

// Canonical "p/q" rendering (q >= 1 always present, so documents round-trip
// without an integer/ratio case split).
inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

// log2 of a positive integer with ~double mantissa accuracy, exponent exact.
inline long double log2_mpz(const mpz_class& z) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log2(static_cast<long double>(mant)) + static_cast<long double>(exp2);
}

// Natural log of a positive rational. Computed as log(num) - log(den) in the
// base-2 domain so huge numerators/denominators never overflow a double.
inline long double log(const Rational& r) {
    if (sgn(r) <= 0) throw std::domain_error("log of non-positive rational");
    static const long double ln2 = 0.6931471805599453094172321214581766L;
    return (log2_mpz(r.get_num()) - log2_mpz(r.get_den())) * ln2;
}

inline long double to_long_double(const Rational& r) {
    if (sgn(r) == 0) return 0.0L;
    const long double l2 = log2_mpz(mpz_class(abs(r.get_num()))) - log2_mpz(r.get_den());
    const long double mag = std::exp2(l2);
    return sgn(r) < 0 ? -mag : mag;
}

inline Rational pow_ui(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

}  // namespace rat

// FNV-1a, used for input digests in reports. Not cryptographic.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v);

// splitmix64; used to derive independent per-trial seeds from a suite seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace logcalc
