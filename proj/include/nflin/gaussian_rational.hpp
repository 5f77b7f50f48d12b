#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <ostream>
#include <regex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace nflin {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

/// Unsigned decimal digit string to cpp_int (whose string constructor treats a leading 0 as octal).
inline boost::multiprecision::cpp_int decimal_digits(std::string digits)
{
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    return boost::multiprecision::cpp_int(digits.empty() ? std::string("0") : digits);
}

} // namespace detail

/// Parses "p", "p/q" or a finite decimal "d.ddd" into an exact rational.
inline Rational parse_rational(const std::string& text)
{
    static const std::regex fraction(R"(\s*([+-]?)(\d+)\s*(?:/\s*(\d+))?\s*)");
    static const std::regex decimal(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
    std::smatch m;
    Rational r;
    if (std::regex_match(text, m, fraction)) {
        boost::multiprecision::cpp_int num = detail::decimal_digits(m[2].str());
        boost::multiprecision::cpp_int den = m[3].matched ? detail::decimal_digits(m[3].str()) : 1;
        if (den == 0)
            throw SchemaError("zero denominator in rational '" + text + "'");
        r = Rational(num, den);
    } else if (std::regex_match(text, m, decimal)) {
        boost::multiprecision::cpp_int num = detail::decimal_digits(m[2].str() + m[3].str());
        r = Rational(num, boost::multiprecision::pow(boost::multiprecision::cpp_int(10), static_cast<unsigned>(m[3].length())));
    } else {
        throw SchemaError("malformed rational '" + text + "'");
    }
    return m[1].str() == "-" ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r)
{
    return r.str();
}

inline double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

inline std::strong_ordering compare(const Rational& a, const Rational& b)
{
    if (a < b)
        return std::strong_ordering::less;
    if (b < a)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

/// Element of Q(i). Every eigenvalue and every numeric coefficient lives here.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long long re) : re_(re) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw std::domain_error("division by zero Gaussian rational");
        Rational n = o.norm();
        GaussianRational q = *this * o.conj();
        re_ = q.re_ / n;
        im_ = q.im_ / n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic on (re, im); used to key exponent maps deterministically.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b)
    {
        if (auto c = compare(a.re_, b.re_); c != 0)
            return c;
        return compare(a.im_, b.im_);
    }

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    /// Canonical text: "3/2", "-i", "2/3i", "1+2i", "-1/2-i".
    std::string str() const
    {
        auto imag_part = [](const Rational& v, bool leading) {
            std::string s;
            if (v == 1)
                s = leading ? "i" : "+i";
            else if (v == -1)
                s = "-i";
            else {
                s = to_string(v) + "i";
                if (!leading && v > 0)
                    s = "+" + s;
            }
            return s;
        };
        if (im_ == 0)
            return to_string(re_);
        if (re_ == 0)
            return imag_part(im_, true);
        return to_string(re_) + imag_part(im_, false);
    }

    /// True when str() is a single signed number that needs no parentheses as a factor.
    bool is_atomic() const { return im_ == 0 || re_ == 0; }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussianRational pow(GaussianRational base, unsigned exp)
{
    GaussianRational result(1);
    while (exp) {
        if (exp & 1u)
            result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" with rational a, b.
inline GaussianRational parse_gaussian(const std::string& text)
{
    static const std::regex full(R"(\s*([+-]?[0-9./]+)?\s*(?:([+-])\s*([0-9./]*)\s*i)?\s*)");
    static const std::regex pure_imag(R"(\s*([+-]?)\s*([0-9./]*)\s*i\s*)");
    std::smatch m;
    if (std::regex_match(text, m, pure_imag)) {
        Rational im = m[2].length() ? parse_rational(m[2].str()) : Rational(1);
        return {Rational(0), m[1].str() == "-" ? Rational(-im) : im};
    }
    if (std::regex_match(text, m, full) && m[1].matched) {
        Rational re = parse_rational(m[1].str());
        Rational im(0);
        if (m[2].matched) {
            im = m[3].length() ? parse_rational(m[3].str()) : Rational(1);
            if (m[2].str() == "-")
                im = -im;
        }
        return {re, im};
    }
    throw SchemaError("malformed Gaussian rational '" + text + "'");
}

} // namespace nflin
