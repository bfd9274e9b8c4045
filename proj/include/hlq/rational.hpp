#ifndef HLQ_RATIONAL_HPP
#define HLQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hlq {

// Exact rational scalar. All arithmetic in the library is exact; there are
// no floating-point code paths and no tolerances.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long p, long long q = 1) {
    if (q == 0) throw std::domain_error("rational with zero denominator");
    return Rational(p, q);
}

// Serialized form: "p" when the denominator is 1 (so zero prints as "0"),
// otherwise "p/q" with q > 0 and gcd(p,q) = 1.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q <= 0) throw std::invalid_argument("denominator must be positive");
        return Rational(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

}  // namespace hlq

#endif
