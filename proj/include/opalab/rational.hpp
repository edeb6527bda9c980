#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace opalab {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator), so equality is plain value equality.
using Rational = mpq_class;

// Parses "p/q" or a bare integer "p". Decimal points, exponents and
// whitespace are rejected; the denominator must be nonzero.
Rational rational_from_string(const std::string& text);

// Canonical "p/q" form, denominator always written (e.g. "3/1", "-2/5").
std::string rational_to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

// Exact complex scalar with rational real and imaginary parts. All
// arithmetic is closed and exact; nothing here ever rounds.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational real) : re(std::move(real)) {}
    GaussianRational(Rational real, Rational imag)
        : re(std::move(real)), im(std::move(imag)) {}
    GaussianRational(long real) : re(real) {}
    GaussianRational(int real) : re(real) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }

    // |x|^2, an exact nonnegative rational.
    Rational norm_sq() const { return re * re + im * im; }

    std::complex<double> to_complex() const {
        return {to_double(re), to_double(im)};
    }

    friend GaussianRational operator+(const GaussianRational& a,
                                      const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a,
                                      const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a,
                                      const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a,
                                      const GaussianRational& b) {
        if (b.is_zero()) {
            throw std::domain_error("GaussianRational: division by zero");
        }
        Rational d = b.norm_sq();
        return {(a.re * b.re + a.im * b.im) / d,
                (a.im * b.re - a.re * b.im) / d};
    }

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
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const GaussianRational& a,
                           const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a,
                           const GaussianRational& b) {
        return !(a == b);
    }
};

// "re+im*i" with rational parts, or just "re" when purely real.
std::string gaussian_to_string(const GaussianRational& value);

}  // namespace opalab
