#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace nflin {

/// Finite sum  sum_lambda p_lambda(t) e^{lambda t}  where each p_lambda is a polynomial in t
/// whose coefficients are multivariate polynomials (in initial-condition and parameter
/// symbols). Closed under +, *, d/dt and antidifferentiation.
class PolyExp {
public:
    /// Coefficients of p_lambda by ascending power of t; never empty, last entry nonzero.
    using TPoly = std::vector<Polynomial>;

    PolyExp() = default;

    /// coeff * t^tpower * e^{lambda t}
    static PolyExp term(const GaussianRational& lambda, unsigned tpower, const Polynomial& coeff)
    {
        PolyExp f;
        if (!coeff.is_zero()) {
            TPoly p(tpower + 1);
            p[tpower] = coeff;
            f.terms_.emplace(lambda, std::move(p));
        }
        return f;
    }

    static PolyExp constant(const Polynomial& c) { return term(GaussianRational(0), 0, c); }

    const std::map<GaussianRational, TPoly>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Highest t-power appearing with exponent lambda, or -1.
    int tdegree(const GaussianRational& lambda) const
    {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? -1 : static_cast<int>(it->second.size()) - 1;
    }

    PolyExp operator-() const
    {
        PolyExp r(*this);
        for (auto& [lambda, p] : r.terms_)
            for (auto& c : p)
                c = -c;
        return r;
    }

    PolyExp& operator+=(const PolyExp& o)
    {
        for (const auto& [lambda, p] : o.terms_)
            add(lambda, p);
        return *this;
    }
    PolyExp& operator-=(const PolyExp& o) { return *this += -o; }

    friend PolyExp operator+(PolyExp a, const PolyExp& b) { return a += b; }
    friend PolyExp operator-(PolyExp a, const PolyExp& b) { return a -= b; }

    friend PolyExp operator*(const PolyExp& a, const PolyExp& b)
    {
        PolyExp r;
        for (const auto& [la, pa] : a.terms_)
            for (const auto& [lb, pb] : b.terms_) {
                TPoly prod(pa.size() + pb.size() - 1);
                for (std::size_t i = 0; i < pa.size(); ++i) {
                    if (pa[i].is_zero())
                        continue;
                    for (std::size_t j = 0; j < pb.size(); ++j)
                        if (!pb[j].is_zero())
                            prod[i + j] += pa[i] * pb[j];
                }
                r.add(la + lb, prod);
            }
        return r;
    }

    /// Multiplies every coefficient by a polynomial constant in t.
    PolyExp scaled(const Polynomial& k) const
    {
        PolyExp r;
        for (const auto& [lambda, p] : terms_) {
            TPoly q(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                q[i] = p[i] * k;
            r.add(lambda, q);
        }
        return r;
    }

    /// d/dt (p(t) e^{lt}) = (p'(t) + l p(t)) e^{lt}
    PolyExp derivative() const
    {
        PolyExp r;
        for (const auto& [lambda, p] : terms_) {
            TPoly q(p.size());
            for (std::size_t k = 0; k < p.size(); ++k) {
                q[k] = p[k].scaled(lambda);
                if (k + 1 < p.size())
                    q[k] += p[k + 1].scaled(GaussianRational(static_cast<long long>(k + 1)));
            }
            r.add(lambda, q);
        }
        return r;
    }

    /// Some F with F' = f. For lambda = 0 the t-polynomial is integrated with zero constant;
    /// for lambda != 0 the unique polynomial-exponential primitive is returned.
    PolyExp antiderivative() const
    {
        PolyExp r;
        for (const auto& [lambda, p] : terms_) {
            if (lambda.is_zero())
                r.add(lambda, integrate_from_zero(p));
            else
                r.add(lambda, shifted_particular(p, lambda));
        }
        return r;
    }

    /// Value at t = 0 as a polynomial in the coefficient symbols.
    Polynomial at_zero() const
    {
        Polynomial s;
        for (const auto& [lambda, p] : terms_)
            s += p.front();
        return s;
    }

    /// Applies a symbol substitution to every coefficient.
    PolyExp substitute(const std::map<std::string, Polynomial>& bindings) const
    {
        PolyExp r;
        for (const auto& [lambda, p] : terms_) {
            TPoly q(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                q[i] = p[i].substitute(bindings);
            r.add(lambda, q);
        }
        return r;
    }

    /// Symbols used by any coefficient.
    SymbolList used_symbols() const
    {
        SymbolList out;
        for (const auto& [lambda, p] : terms_)
            for (const auto& c : p)
                for (const auto& s : c.used_symbols())
                    if (std::find(out.begin(), out.end(), s) == out.end())
                        out.push_back(s);
        return out;
    }

    std::complex<double> evaluate(double t, const std::map<std::string, std::complex<double>>& bindings) const
    {
        std::complex<double> sum = 0.0;
        for (const auto& [lambda, p] : terms_) {
            std::complex<double> poly = 0.0;
            for (std::size_t k = p.size(); k-- > 0;)
                poly = poly * t + p[k].evaluate(bindings);
            sum += poly * std::exp(lambda.to_complex() * t);
        }
        return sum;
    }

    friend bool operator==(const PolyExp& a, const PolyExp& b) { return (a - b).is_zero(); }

    /// "(y0 + c1*w0*t)*exp(2*t) + x0*exp(t)", grouped by exponent, t-powers ascending.
    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [lambda, p] : terms_) {
            std::string poly;
            int nonzero = 0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (p[k].is_zero())
                    continue;
                ++nonzero;
                std::string c = p[k].str();
                std::string piece;
                if (k == 0)
                    piece = c;
                else {
                    std::string tp = k == 1 ? "t" : "t^" + std::to_string(k);
                    if (c == "1")
                        piece = tp;
                    else if (c == "-1")
                        piece = "-" + tp;
                    else if (p[k].terms().size() == 1)
                        piece = c + "*" + tp;
                    else
                        piece = "(" + c + ")*" + tp;
                }
                if (poly.empty())
                    poly = piece;
                else if (piece.front() == '-')
                    poly += " - " + piece.substr(1);
                else
                    poly += " + " + piece;
            }
            bool single = nonzero == 1 && p.back().terms().size() == 1;
            std::string factor;
            if (lambda.is_zero())
                factor = poly;
            else {
                std::string ex = lambda.is_one() ? "t" : (lambda.is_atomic() ? lambda.str() : "(" + lambda.str() + ")") + "*t";
                if (poly == "1")
                    factor = "exp(" + ex + ")";
                else
                    factor = (single ? poly : "(" + poly + ")") + "*exp(" + ex + ")";
            }
            out += out.empty() ? factor : " + " + factor;
        }
        return out;
    }

    /// Unique solution of  y' = lambda*y + g,  y(0) = y0  (variation of constants).
    /// Forcing terms with exponent equal to lambda raise the t-power by one.
    friend PolyExp solve_scalar(const GaussianRational& lambda, const Polynomial& y0, const PolyExp& g)
    {
        PolyExp y = PolyExp::term(lambda, 0, y0);
        for (const auto& [mu, p] : g.terms_) {
            if (mu == lambda) {
                y.add(lambda, integrate_from_zero(p));
                continue;
            }
            // q' + (mu - lambda) q = p has a unique polynomial solution q; then subtract
            // q(0) e^{lambda t} to restore the initial value.
            TPoly q = shifted_particular(p, mu - lambda);
            y.add(mu, q);
            y.add(lambda, TPoly{-q.front()});
        }
        return y;
    }

private:
    void add(const GaussianRational& lambda, const TPoly& p)
    {
        auto it = terms_.find(lambda);
        if (it == terms_.end())
            it = terms_.emplace(lambda, TPoly{}).first;
        TPoly& dst = it->second;
        if (dst.size() < p.size())
            dst.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!p[i].is_zero())
                dst[i] += p[i];
        while (!dst.empty() && dst.back().is_zero())
            dst.pop_back();
        if (dst.empty())
            terms_.erase(it);
    }

    /// t^k -> t^{k+1}/(k+1)
    static TPoly integrate_from_zero(const TPoly& p)
    {
        TPoly q(p.size() + 1);
        for (std::size_t k = 0; k < p.size(); ++k)
            q[k + 1] = p[k].scaled(GaussianRational(Rational(1, static_cast<long long>(k + 1))));
        return q;
    }

    /// Polynomial q with q' + s q = p (s != 0): q = sum_j (-1)^j p^(j) / s^{j+1}.
    static TPoly shifted_particular(const TPoly& p, const GaussianRational& s)
    {
        TPoly q(p.size());
        TPoly deriv = p;
        GaussianRational factor = GaussianRational(1) / s;
        for (std::size_t j = 0; j < p.size(); ++j) {
            for (std::size_t k = 0; k < deriv.size(); ++k)
                if (!deriv[k].is_zero())
                    q[k] += deriv[k].scaled(factor);
            TPoly next(deriv.size() > 1 ? deriv.size() - 1 : 0);
            for (std::size_t k = 1; k < deriv.size(); ++k)
                next[k - 1] = deriv[k].scaled(GaussianRational(static_cast<long long>(k)));
            deriv = std::move(next);
            factor = -factor / s;
        }
        return q;
    }

    std::map<GaussianRational, TPoly> terms_;
};

} // namespace nflin
