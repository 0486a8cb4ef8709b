#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace obliv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Errc {
    parse = 2,   // malformed input (CLI exit code 2)
    domain = 3,  // precondition violated (CLI exit code 3)
    budget = 4,  // atom/alphabet budget exceeded (CLI exit code 4)
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void throw_parse(const std::string& what) { throw Error(Errc::parse, what); }
[[noreturn]] inline void throw_domain(const std::string& what) { throw Error(Errc::domain, what); }
[[noreturn]] inline void throw_budget(const std::string& what) { throw Error(Errc::budget, what); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// log2 of a positive big integer, safe against double overflow.
inline double log2_big(const BigInt& n) {
    if (n <= 0) throw_domain("log2_big: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(n);
    if (bits <= 900) return std::log2(n.convert_to<double>());
    const BigInt shifted = n >> (bits - 64);
    return std::log2(shifted.convert_to<double>()) + static_cast<double>(bits - 64);
}

/// log2 of a positive rational, evaluated in binary64 at the output boundary.
inline double log2_rational(const Rational& r) {
    if (r <= 0) throw_domain("log2_rational: argument must be positive");
    return log2_big(numerator(r)) - log2_big(denominator(r));
}

/// Parses "p/q" or "p" with optional sign. Rejects anything else.
inline Rational parse_rational(std::string_view s) {
    const auto parse_int = [](std::string_view t) -> BigInt {
        if (t.empty()) throw_parse("empty integer in rational literal");
        std::size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) throw_parse("sign without digits in rational literal");
        BigInt v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') throw_parse("invalid digit in rational literal: '" + std::string(t) + "'");
            v = v * 10 + (t[i] - '0');
        }
        return neg ? -v : v;
    };
    const std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    const BigInt num = parse_int(s.substr(0, slash));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw_parse("zero denominator in rational literal");
    return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p/q", "p", or decimal notation ("0.05" becomes exactly 5/100).
inline Rational parse_rational_or_decimal(std::string_view s) {
    const auto dot = s.find('.');
    if (dot == std::string_view::npos) return parse_rational(s);
    if (s.find('/') != std::string_view::npos) throw_parse("mixed decimal and fraction notation");
    const Rational whole = s.substr(0, dot).empty() || s.substr(0, dot) == "-" || s.substr(0, dot) == "+"
                               ? Rational(0)
                               : parse_rational(s.substr(0, dot));
    const std::string_view frac = s.substr(dot + 1);
    if (frac.empty()) return whole;
    BigInt num = 0, den = 1;
    for (char c : frac) {
        if (c < '0' || c > '9') throw_parse("invalid digit in decimal literal: '" + std::string(s) + "'");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    const bool neg = !s.empty() && s[0] == '-';
    const Rational frac_part(num, den);
    return neg ? Rational(whole - frac_part) : Rational(whole + frac_part);
}

}  // namespace obliv
