#ifndef TRACECOUNT_RATIONAL_HPP
#define TRACECOUNT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "tracecount/errors.hpp"

namespace tracecount {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Smallest integer >= x.
inline Integer ceilRational(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer q = num / den;
    if (num % den != 0 && num > 0) {
        ++q;
    }
    return q;
}

/// Serializes a rational as "num/den" (always with an explicit denominator).
inline std::string formatRational(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    return num.str() + "/" + den.str();
}

/// Parses "p/q" or a plain integer "p"; throws ParseError on malformed input.
inline Rational parseRational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) {
            throw ParseError("rational with zero denominator: " + text);
        }
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational: " + text);
    }
}

} // namespace tracecount

#endif
