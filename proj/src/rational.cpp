#include "crnf/rational.hpp"

#include <cctype>

namespace crnf {

GaussianRational i_pow(long k) {
    long r = ((k % 4) + 4) % 4;
    switch (r) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::i();
    }
}

Rational binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

namespace {

// R = [-]digits[/digits]; sign only allowed when allow_sign.
Rational parse_rational_part(const std::string& s, size_t& pos, bool allow_sign) {
    size_t start = pos;
    bool neg = false;
    if (allow_sign && pos < s.size() && s[pos] == '-') {
        neg = true;
        ++pos;
    }
    size_t d0 = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == d0)
        throw parse_error("coefficient: expected digits at position " + std::to_string(start) + " in '" + s + "'");
    mpz_class num(s.substr(d0, pos - d0));
    mpz_class den(1);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t d1 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == d1)
            throw parse_error("coefficient: expected denominator digits at position " + std::to_string(pos) +
                              " in '" + s + "'");
        den = mpz_class(s.substr(d1, pos - d1));
        if (den == 0) throw parse_error("coefficient: zero denominator in '" + s + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace

GaussianRational parse_coeff(const std::string& s) {
    size_t pos = 0;
    Rational first = parse_rational_part(s, pos, true);
    if (pos == s.size()) return GaussianRational(first);
    char sep = s[pos];
    if (sep != '+' && sep != '-')
        throw parse_error("coefficient: unexpected character '" + std::string(1, sep) + "' at position " +
                          std::to_string(pos) + " in '" + s + "'");
    ++pos;
    Rational second = parse_rational_part(s, pos, false);
    if (pos >= s.size() || s[pos] != 'i')
        throw parse_error("coefficient: expected 'i' at position " + std::to_string(pos) + " in '" + s + "'");
    ++pos;
    if (pos != s.size())
        throw parse_error("coefficient: trailing characters at position " + std::to_string(pos) + " in '" + s + "'");
    return GaussianRational(first, sep == '-' ? Rational(-second) : second);
}

std::string format_coeff(const GaussianRational& c) {
    if (c.im == 0) return c.re.get_str();
    Rational a = abs(c.im);
    return c.re.get_str() + (c.im < 0 ? "-" : "+") + a.get_str() + "i";
}

}  // namespace crnf
