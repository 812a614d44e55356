#ifndef CRNF_RATIONAL_HPP
#define CRNF_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace crnf {

/// Thrown when an input document or value violates a structural invariant.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed text input (JSON documents, coefficient grammar).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a "cannot happen" branch is reached (singular line system,
/// non-unique decomposition). Signals a bug, never user error.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = mpq_class;  // always canonical: reduced, positive denominator

/// Exact scalar a+bi with rational components; the coefficient field.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw internal_error("GaussianRational: division by zero");
        Rational n = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = r;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// i^k as an exact unit, k may be negative.
GaussianRational i_pow(long k);

/// Binomial coefficient with the convention C(n,k)=0 for k<0 or k>n.
Rational binomial(long n, long k);

/// Coefficient grammar: `R` or `R+Ri` or `R-Ri` with R = `[-]digits[/digits]`.
GaussianRational parse_coeff(const std::string& s);
std::string format_coeff(const GaussianRational& c);

}  // namespace crnf

#endif
