#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussian_rational.hpp"
#include "multiindex.hpp"
#include "polynomial.hpp"

namespace nflin {

/// Eigenvalues lambda_1..lambda_n of the linear part, one per coordinate.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<GaussianRational> eigenvalues) : values_(std::move(eigenvalues))
    {
        if (values_.empty())
            throw std::invalid_argument("spectrum must contain at least one eigenvalue");
    }
    Spectrum(std::initializer_list<GaussianRational> eigenvalues)
        : Spectrum(std::vector<GaussianRational>(eigenvalues)) {}

    std::size_t size() const noexcept { return values_.size(); }
    const GaussianRational& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<GaussianRational>& values() const noexcept { return values_; }

    /// (mu . lambda)
    GaussianRational dot(const Multiindex& mu) const
    {
        GaussianRational s;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (mu[i] != 0)
                s += values_[i] * GaussianRational(mu[i]);
        return s;
    }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<GaussianRational> values_;
};

/// Linear part A = A_s + A_n in upper Jordan form. superdiagonal[i] is the entry
/// A(i, i+1); it is usually 0 or 1 but may be a symbolic coupling such as eta.
struct JordanStructure {
    Spectrum spectrum;
    std::vector<Polynomial> superdiagonal;

    JordanStructure() = default;
    explicit JordanStructure(Spectrum s)
        : spectrum(std::move(s)), superdiagonal(spectrum.size() - 1) {}
    JordanStructure(Spectrum s, std::vector<Polynomial> sup)
        : spectrum(std::move(s)), superdiagonal(std::move(sup)) {}

    /// Diagonal spectrum with 0/1 flags on the superdiagonal.
    static JordanStructure with_flags(Spectrum s, const std::vector<int>& flags)
    {
        std::vector<Polynomial> sup;
        for (int f : flags)
            sup.emplace_back(static_cast<long long>(f));
        return {std::move(s), std::move(sup)};
    }

    friend bool operator==(const JordanStructure&, const JordanStructure&) = default;

    std::size_t size() const noexcept { return spectrum.size(); }
    bool coupled(std::size_t i) const { return i < superdiagonal.size() && !superdiagonal[i].is_zero(); }
    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < superdiagonal.size(); ++i)
            if (coupled(i))
                return false;
        return true;
    }
};

struct JordanViolation {
    std::size_t position; ///< 1-based index i of the offending entry A(i, i+1)
    std::string message;
};

/// Empty iff every nonzero superdiagonal entry sits inside a block of equal eigenvalues.
inline std::vector<JordanViolation> validate_jordan(const JordanStructure& j)
{
    std::vector<JordanViolation> out;
    const std::size_t n = j.size();
    if (j.superdiagonal.size() + 1 != n) {
        out.push_back({0, "superdiagonal has " + std::to_string(j.superdiagonal.size()) + " entries, expected " +
                              std::to_string(n - 1)});
        return out;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (j.coupled(i) && j.spectrum[i] != j.spectrum[i + 1])
            out.push_back({i + 1, "coupling between distinct eigenvalues " + j.spectrum[i].str() + " and " +
                                      j.spectrum[i + 1].str()});
    return out;
}

/// Direction d with d1*Re(l) + d2*Im(l) >= margin > 0 for every eigenvalue l:
/// a witness that the origin lies strictly outside the convex hull of the spectrum.
struct PoincareCertificate {
    Rational d1;
    Rational d2;
    Rational margin;

    Rational project(const GaussianRational& z) const { return d1 * z.re() + d2 * z.im(); }
};

namespace detail {

inline std::optional<PoincareCertificate> try_direction(const Spectrum& s, const Rational& d1, const Rational& d2)
{
    if (d1 == 0 && d2 == 0)
        return std::nullopt;
    PoincareCertificate c{d1, d2, Rational(0)};
    bool first = true;
    for (const auto& z : s.values()) {
        Rational p = c.project(z);
        if (p <= 0)
            return std::nullopt;
        if (first || p < c.margin)
            c.margin = p;
        first = false;
    }
    return c;
}

} // namespace detail

/// Certificate iff the origin lies strictly outside the convex hull of the spectrum
/// (origin on the hull boundary counts as failure).
///
/// The set of valid directions is an open cone bounded by rays perpendicular to
/// eigenvalues, so candidates are the eigenvalues themselves followed by sums of two
/// such perpendicular rays; the first candidate that verifies is returned.
inline std::optional<PoincareCertificate> check_poincare(const Spectrum& s)
{
    for (const auto& z : s.values())
        if (auto c = detail::try_direction(s, z.re(), z.im()))
            return c;
    std::vector<std::pair<Rational, Rational>> rays;
    for (const auto& z : s.values()) {
        rays.emplace_back(-z.im(), z.re());
        rays.emplace_back(z.im(), -z.re());
    }
    for (std::size_t a = 0; a < rays.size(); ++a)
        for (std::size_t b = a + 1; b < rays.size(); ++b)
            if (auto c = detail::try_direction(s, rays[a].first + rays[b].first, rays[a].second + rays[b].second))
                return c;
    return std::nullopt;
}

/// D = floor(max <d, l_alpha> / min <d, l_j>); every resonance has |mu| <= D.
inline int resonance_degree_bound(const Spectrum& s, const PoincareCertificate& cert)
{
    Rational lo = cert.project(s[0]), hi = lo;
    for (const auto& z : s.values()) {
        Rational p = cert.project(z);
        if (p <= 0)
            throw std::invalid_argument("certificate does not separate the spectrum from the origin");
        lo = p < lo ? p : lo;
        hi = p > hi ? p : hi;
    }
    Rational q = hi / lo;
    boost::multiprecision::cpp_int f = numerator(q) / denominator(q);
    return f.convert_to<int>();
}

/// Smallest-degree mu with |mu| >= 1 and (mu . lambda) = 0, searched up to max_degree.
inline std::optional<Multiindex> find_master_resonance(const Spectrum& s, int max_degree)
{
    std::optional<Multiindex> found;
    for (int d = 1; d <= max_degree && !found; ++d)
        for_each_composition(s.size(), d, [&](const Multiindex& mu) {
            if (!found && s.dot(mu).is_zero())
                found = mu;
        });
    return found;
}

} // namespace nflin
