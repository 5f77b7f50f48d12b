#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "resonance.hpp"
#include "spectrum.hpp"

namespace nflin {

/// X = V^i(x) d/dx^i over the phase symbols `phase`. Components may also contain
/// parameter symbols, which are treated as constants by differentiation.
struct PolynomialVectorField {
    SymbolList phase;
    std::vector<Polynomial> components;

    std::size_t size() const noexcept { return components.size(); }

    bool is_zero() const
    {
        return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
    }

    /// X(p) = V^j dp/dx^j
    Polynomial apply(const Polynomial& p) const
    {
        Polynomial r;
        for (std::size_t j = 0; j < phase.size(); ++j)
            if (!components[j].is_zero())
                r += components[j] * p.derivative(phase[j]);
        return r;
    }

    PolynomialVectorField operator+(const PolynomialVectorField& o) const
    {
        PolynomialVectorField r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            r.components[i] += o.components.at(i);
        return r;
    }
    PolynomialVectorField operator-(const PolynomialVectorField& o) const
    {
        PolynomialVectorField r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            r.components[i] -= o.components.at(i);
        return r;
    }

    friend bool operator==(const PolynomialVectorField& a, const PolynomialVectorField& b)
    {
        return a.phase == b.phase && a.components == b.components;
    }
};

/// [V, W]^i = V^j d_j W^i - W^j d_j V^i
inline PolynomialVectorField lie_bracket(const PolynomialVectorField& v, const PolynomialVectorField& w)
{
    if (v.phase != w.phase || v.size() != w.size())
        throw std::invalid_argument("lie_bracket: fields live on different phase spaces");
    PolynomialVectorField r{v.phase, std::vector<Polynomial>(v.size())};
    for (std::size_t i = 0; i < v.size(); ++i)
        r.components[i] = v.apply(w.components[i]) - w.apply(v.components[i]);
    return r;
}

inline SymbolList default_coordinates(std::size_t n)
{
    SymbolList out;
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back("x" + std::to_string(i));
    return out;
}

/// One resonant term c * x^mu e_alpha of F.
struct NormalFormTerm {
    ResonantMonomial monomial;
    Polynomial c;

    friend bool operator==(const NormalFormTerm&, const NormalFormTerm&) = default;
};

/// x' = A x + F(x) with A in upper Jordan form and F a sum of resonant terms.
class NormalFormSystem {
public:
    NormalFormSystem() = default;

    /// Validated construction: Jordan layout, resonance of every term against A_s, and no
    /// phase symbol inside a coefficient.
    static NormalFormSystem create(JordanStructure jordan, std::vector<NormalFormTerm> terms,
                                   SymbolList coordinates = {})
    {
        NormalFormSystem nf = unchecked(std::move(jordan), std::move(terms), std::move(coordinates));
        if (auto v = validate_jordan(nf.jordan_); !v.empty())
            throw SchemaError(v.front().message, "/superdiagonal/" + std::to_string(v.front().position - 1));
        for (const auto& t : nf.terms_) {
            if (t.monomial.mu.size() != nf.size())
                throw SchemaError("multiindex " + t.monomial.mu.str() + " has wrong length");
            if (!is_resonant(t.monomial.mu, t.monomial.alpha, nf.jordan_.spectrum))
                throw NonResonantCoefficient(t.monomial.mu.exponents(), t.monomial.alpha,
                                             "monomial " + t.monomial.mu.str() + " is not resonant with alpha=" +
                                                 std::to_string(t.monomial.alpha));
        }
        return nf;
    }

    /// No resonance or Jordan checks; used for probing non-normal-form inputs.
    static NormalFormSystem unchecked(JordanStructure jordan, std::vector<NormalFormTerm> terms,
                                      SymbolList coordinates = {})
    {
        NormalFormSystem nf;
        if (coordinates.empty())
            coordinates = default_coordinates(jordan.size());
        if (coordinates.size() != jordan.size())
            throw SchemaError("coordinate list length does not match the spectrum");
        if (jordan.superdiagonal.size() + 1 != jordan.size())
            throw SchemaError("superdiagonal must have n-1 entries");
        for (const auto& t : terms) {
            if (t.monomial.alpha < 1 || t.monomial.alpha > static_cast<int>(jordan.size()))
                throw SchemaError("alpha " + std::to_string(t.monomial.alpha) + " out of range");
            if (t.monomial.mu.size() != jordan.size())
                throw SchemaError("multiindex " + t.monomial.mu.str() + " has wrong length");
            for (const auto& s : t.c.used_symbols())
                if (std::find(coordinates.begin(), coordinates.end(), s) != coordinates.end())
                    throw SchemaError("coefficient uses phase coordinate '" + s + "'");
        }
        for (const auto& p : jordan.superdiagonal)
            for (const auto& s : p.used_symbols())
                if (std::find(coordinates.begin(), coordinates.end(), s) != coordinates.end())
                    throw SchemaError("superdiagonal uses phase coordinate '" + s + "'");
        nf.jordan_ = std::move(jordan);
        nf.terms_ = std::move(terms);
        nf.coordinates_ = std::move(coordinates);
        return nf;
    }

    std::size_t size() const noexcept { return jordan_.size(); }
    const JordanStructure& jordan() const noexcept { return jordan_; }
    const Spectrum& spectrum() const noexcept { return jordan_.spectrum; }
    const std::vector<NormalFormTerm>& terms() const noexcept { return terms_; }
    const SymbolList& coordinates() const noexcept { return coordinates_; }

    /// Parameter symbols (coefficients and superdiagonal), in order of first appearance.
    SymbolList parameters() const
    {
        SymbolList out;
        auto take = [&](const Polynomial& p) {
            for (const auto& s : p.used_symbols())
                if (std::find(out.begin(), out.end(), s) == out.end())
                    out.push_back(s);
        };
        for (const auto& p : jordan_.superdiagonal)
            take(p);
        for (const auto& t : terms_)
            take(t.c);
        return out;
    }

    Polynomial coordinate(std::size_t i) const
    {
        return Polynomial::monomial(coordinates_, Multiindex::unit(size(), i));
    }

    /// X_0 = (A_s x)^i d_i
    PolynomialVectorField semisimple_field() const
    {
        PolynomialVectorField f{coordinates_, {}};
        for (std::size_t i = 0; i < size(); ++i)
            f.components.push_back(coordinate(i).scaled(jordan_.spectrum[i]));
        return f;
    }

    /// X_A = (A x)^i d_i
    PolynomialVectorField linear_field() const
    {
        PolynomialVectorField f = semisimple_field();
        for (std::size_t i = 0; i + 1 < size(); ++i)
            if (jordan_.coupled(i))
                f.components[i] += jordan_.superdiagonal[i] * coordinate(i + 1);
        return f;
    }

    /// X_l = (A^+ x)^i d_i with A^+ the conjugate transpose.
    PolynomialVectorField adjoint_field() const
    {
        PolynomialVectorField f{coordinates_, {}};
        for (std::size_t i = 0; i < size(); ++i)
            f.components.push_back(coordinate(i).scaled(jordan_.spectrum[i].conj()));
        for (std::size_t i = 0; i + 1 < size(); ++i)
            if (jordan_.coupled(i))
                f.components[i + 1] += jordan_.superdiagonal[i].conj() * coordinate(i);
        return f;
    }

    /// X_F
    PolynomialVectorField nonlinear_field() const
    {
        PolynomialVectorField f{coordinates_, std::vector<Polynomial>(size(), Polynomial(coordinates_))};
        for (const auto& t : terms_) {
            auto a = static_cast<std::size_t>(t.monomial.alpha - 1);
            f.components[a] += t.c * Polynomial::monomial(coordinates_, t.monomial.mu);
        }
        return f;
    }

    /// Components of A x + F(x).
    PolynomialVectorField rhs() const { return linear_field() + nonlinear_field(); }

    friend bool operator==(const NormalFormSystem&, const NormalFormSystem&) = default;

private:
    JordanStructure jordan_;
    std::vector<NormalFormTerm> terms_;
    SymbolList coordinates_;
};

inline PolynomialVectorField rhs(const NormalFormSystem& nf)
{
    return nf.rhs();
}

/// Per-monomial route: every (mu, alpha) with a nonzero net coefficient is resonant with
/// A_s, and the superdiagonal only couples equal eigenvalues.
inline bool seminormal_by_resonance(const NormalFormSystem& nf)
{
    if (!validate_jordan(nf.jordan()).empty())
        return false;
    std::map<std::pair<Multiindex, int>, Polynomial> net;
    for (const auto& t : nf.terms())
        net[{t.monomial.mu, t.monomial.alpha}] += t.c;
    for (const auto& [key, c] : net)
        if (!c.is_zero() && !is_resonant(key.first, key.second, nf.spectrum()))
            return false;
    return true;
}

/// [X_0, X_f] == 0 identically in the parameters.
inline bool seminormal_by_bracket(const NormalFormSystem& nf)
{
    return lie_bracket(nf.semisimple_field(), nf.rhs()).is_zero();
}

/// Seminormal-form test. Both routes are evaluated and must agree.
inline bool check_seminormal(const NormalFormSystem& nf)
{
    bool bracket = seminormal_by_bracket(nf);
    if (bracket != seminormal_by_resonance(nf))
        throw StructureViolation("seminormal tests disagree: bracket route says " + std::string(bracket ? "yes" : "no"));
    return bracket;
}

/// [X_l, X_F]; zero iff the system is in Poincare-Dulac normal form.
inline PolynomialVectorField full_normal_form_residual(const NormalFormSystem& nf)
{
    return lie_bracket(nf.adjoint_field(), nf.nonlinear_field());
}

inline bool check_full_normal_form(const NormalFormSystem& nf)
{
    return full_normal_form_residual(nf).is_zero();
}

/// Drops every term with |mu| > N.
inline NormalFormSystem truncate_normal_form(const NormalFormSystem& nf, int N)
{
    if (N < 1)
        throw std::invalid_argument("truncation order must be >= 1");
    std::vector<NormalFormTerm> kept;
    for (const auto& t : nf.terms())
        if (t.monomial.mu.degree() <= N)
            kept.push_back(t);
    return NormalFormSystem::unchecked(nf.jordan(), std::move(kept), nf.coordinates());
}

} // namespace nflin
