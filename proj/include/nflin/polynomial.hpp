#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gaussian_rational.hpp"
#include "multiindex.hpp"

namespace nflin {

using SymbolList = std::vector<std::string>;

/// Sparse multivariate polynomial with Gaussian-rational coefficients over an ordered
/// symbol list. Operands declared over different lists are aligned on the fly: the
/// result keeps the left operand's symbols first and appends the missing ones.
class Polynomial {
public:
    using TermMap = std::map<Multiindex, GaussianRational, GrlexDescending>;

    Polynomial() : symbols_(empty_symbols()) {}
    Polynomial(GaussianRational c) : symbols_(empty_symbols())
    {
        if (!c.is_zero())
            terms_.emplace(Multiindex(), std::move(c));
    }
    Polynomial(long long c) : Polynomial(GaussianRational(c)) {}
    Polynomial(Rational c) : Polynomial(GaussianRational(std::move(c))) {}

    /// Zero polynomial over the given symbols.
    explicit Polynomial(SymbolList symbols)
        : symbols_(std::make_shared<const SymbolList>(std::move(symbols))) {}

    static Polynomial variable(const std::string& name)
    {
        Polynomial p(SymbolList{name});
        p.terms_.emplace(Multiindex{1}, GaussianRational(1));
        return p;
    }

    /// Monomial coeff * x^mu over an explicit symbol list.
    static Polynomial monomial(SymbolList symbols, const Multiindex& mu, GaussianRational coeff = GaussianRational(1))
    {
        if (mu.size() != symbols.size())
            throw std::invalid_argument("multiindex length does not match symbol list");
        Polynomial p(std::move(symbols));
        if (!coeff.is_zero())
            p.terms_.emplace(mu, std::move(coeff));
        return p;
    }

    const SymbolList& symbols() const noexcept { return *symbols_; }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }
    GaussianRational constant_term() const
    {
        for (const auto& [mu, c] : terms_)
            if (mu.is_zero())
                return c;
        return {};
    }

    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    /// Index of `name` in the symbol list, or -1.
    int index_of(const std::string& name) const
    {
        auto it = std::find(symbols_->begin(), symbols_->end(), name);
        return it == symbols_->end() ? -1 : static_cast<int>(it - symbols_->begin());
    }

    /// Symbols with a positive exponent in some term, in declaration order.
    SymbolList used_symbols() const
    {
        SymbolList out;
        for (std::size_t i = 0; i < symbols_->size(); ++i)
            for (const auto& [mu, c] : terms_)
                if (mu[i] > 0) {
                    out.push_back((*symbols_)[i]);
                    break;
                }
        return out;
    }

    bool uses(const std::string& name) const
    {
        int k = index_of(name);
        if (k < 0)
            return false;
        return std::any_of(terms_.begin(), terms_.end(), [k](const auto& t) { return t.first[k] > 0; });
    }

    /// The same polynomial re-expressed over `target`, which must contain every used symbol.
    Polynomial over(const SymbolList& target) const
    {
        if (target == *symbols_)
            return *this;
        return over(std::make_shared<const SymbolList>(target));
    }

    Polynomial operator-() const
    {
        Polynomial r(*this);
        for (auto& [mu, c] : r.terms_)
            c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return accumulate(o, false); }
    Polynomial& operator-=(const Polynomial& o) { return accumulate(o, true); }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return Polynomial(a.symbols_, b.symbols_);
        auto [x, y] = align(a, b);
        Polynomial r(x.symbols_);
        for (const auto& [ma, ca] : x.terms_)
            for (const auto& [mb, cb] : y.terms_)
                r.add_term(ma + mb, ca * cb);
        return r;
    }

    Polynomial scaled(const GaussianRational& k) const
    {
        if (k.is_zero())
            return Polynomial(symbols_);
        Polynomial r(*this);
        for (auto& [mu, c] : r.terms_)
            c *= k;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        if (a.symbols_ == b.symbols_ || *a.symbols_ == *b.symbols_)
            return a.terms_ == b.terms_;
        return (a - b).is_zero();
    }

    /// Partial derivative with respect to `name` (zero if the symbol is absent).
    Polynomial derivative(const std::string& name) const
    {
        int k = index_of(name);
        Polynomial r(symbols_);
        if (k < 0)
            return r;
        for (const auto& [mu, c] : terms_) {
            int e = mu[k];
            if (e == 0)
                continue;
            Multiindex m(mu);
            m.set(k, e - 1);
            r.add_term(m, c * GaussianRational(e));
        }
        return r;
    }

    /// Replaces each bound symbol by its polynomial; unbound symbols are kept as themselves.
    Polynomial substitute(const std::map<std::string, Polynomial>& bindings) const
    {
        const std::size_t n = symbols_->size();
        std::vector<const Polynomial*> image(n, nullptr);
        SymbolList kept;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = bindings.find((*symbols_)[i]);
            if (it != bindings.end())
                image[i] = &it->second;
            else
                kept.push_back((*symbols_)[i]);
        }
        auto base = std::make_shared<const SymbolList>(kept);
        Polynomial result(base);
        std::vector<std::map<int, Polynomial>> powers(n);
        auto power_of = [&](std::size_t i, int e) -> const Polynomial& {
            auto& cache = powers[i];
            if (auto it = cache.find(e); it != cache.end())
                return it->second;
            Polynomial p = pow(*image[i], static_cast<unsigned>(e));
            return cache.emplace(e, std::move(p)).first->second;
        };
        for (const auto& [mu, c] : terms_) {
            Multiindex rest(kept.size());
            Polynomial term(base);
            std::size_t j = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!image[i])
                    rest.set(j++, mu[i]);
            term.terms_.emplace(rest, c);
            for (std::size_t i = 0; i < n; ++i)
                if (image[i] && mu[i] > 0)
                    term = term * power_of(i, mu[i]);
            result += term;
        }
        return result;
    }

    /// Numeric value; every used symbol must be bound.
    std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& bindings) const
    {
        const std::size_t n = symbols_->size();
        std::vector<std::complex<double>> vals(n);
        for (const auto& name : used_symbols()) {
            auto it = bindings.find(name);
            if (it == bindings.end())
                throw UnboundSymbol(name);
            vals[static_cast<std::size_t>(index_of(name))] = it->second;
        }
        std::complex<double> sum = 0.0;
        for (const auto& [mu, c] : terms_) {
            std::complex<double> term = c.to_complex();
            for (std::size_t i = 0; i < n; ++i)
                for (int e = 0; e < mu[i]; ++e)
                    term *= vals[i];
            sum += term;
        }
        return sum;
    }

    /// Exact value; every used symbol must be bound.
    GaussianRational evaluate_exact(const std::map<std::string, GaussianRational>& bindings) const
    {
        std::map<std::string, Polynomial> as_poly;
        for (const auto& [k, v] : bindings)
            as_poly.emplace(k, Polynomial(v));
        Polynomial r = substitute(as_poly);
        if (auto used = r.used_symbols(); !used.empty())
            throw UnboundSymbol(used.front());
        return r.constant_term();
    }

    /// Splits into sum_m x^m * coeff_m where x ranges over `vars`; the coefficients are
    /// polynomials in the remaining symbols. Keys are multiindices over `vars`.
    std::map<Multiindex, Polynomial, GrlexDescending> collect(const SymbolList& vars) const
    {
        std::vector<int> slot_of_var(vars.size(), -1);
        for (std::size_t v = 0; v < vars.size(); ++v)
            slot_of_var[v] = index_of(vars[v]);
        SymbolList rest;
        std::vector<bool> is_var(symbols_->size(), false);
        for (int s : slot_of_var)
            if (s >= 0)
                is_var[static_cast<std::size_t>(s)] = true;
        for (std::size_t i = 0; i < symbols_->size(); ++i)
            if (!is_var[i])
                rest.push_back((*symbols_)[i]);
        auto rest_ptr = std::make_shared<const SymbolList>(rest);

        std::map<Multiindex, Polynomial, GrlexDescending> out;
        for (const auto& [mu, c] : terms_) {
            Multiindex key(vars.size());
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (slot_of_var[v] >= 0)
                    key.set(v, mu[static_cast<std::size_t>(slot_of_var[v])]);
            Multiindex rem(rest.size());
            std::size_t j = 0;
            for (std::size_t i = 0; i < symbols_->size(); ++i)
                if (!is_var[i])
                    rem.set(j++, mu[i]);
            auto it = out.try_emplace(key, Polynomial(rest_ptr)).first;
            it->second.add_term(rem, c);
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    /// Coefficient-wise complex conjugate (symbols are treated as real).
    Polynomial conj() const
    {
        Polynomial r(*this);
        for (auto& [mu, c] : r.terms_)
            c = c.conj();
        return r;
    }

    /// Canonical text in descending graded-lex order, e.g. "c1*x^2 - 3/2*y + 1".
    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [mu, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                if (mu[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += (*symbols_)[i];
                if (mu[i] > 1)
                    mono += "^" + std::to_string(mu[i]);
            }
            bool negative = c.is_atomic() && (c.re() < 0 || (c.re() == 0 && c.im() < 0));
            GaussianRational mag = negative ? -c : c;
            std::string coeff = mag.is_atomic() ? mag.str() : "(" + mag.str() + ")";
            std::string body;
            if (mono.empty())
                body = coeff;
            else if (mag.is_one())
                body = mono;
            else
                body = coeff + "*" + mono;
            if (first)
                out += negative ? "-" + body : body;
            else
                out += negative ? " - " + body : " + " + body;
            first = false;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

    friend Polynomial pow(Polynomial base, unsigned exp)
    {
        Polynomial result = Polynomial(GaussianRational(1)).over(base.symbols_);
        while (exp) {
            if (exp & 1u)
                result = result * base;
            exp >>= 1u;
            if (exp)
                base = base * base;
        }
        return result;
    }

private:
    using SymbolsPtr = std::shared_ptr<const SymbolList>;

    explicit Polynomial(SymbolsPtr symbols) : symbols_(std::move(symbols)) {}
    /// Zero over the union of two symbol lists.
    Polynomial(const SymbolsPtr& a, const SymbolsPtr& b) : symbols_(merged(a, b)) {}

    static const SymbolsPtr& empty_symbols()
    {
        static const SymbolsPtr empty = std::make_shared<const SymbolList>();
        return empty;
    }

    static SymbolsPtr merged(const SymbolsPtr& a, const SymbolsPtr& b)
    {
        if (a == b || *a == *b || b->empty())
            return a;
        if (a->empty())
            return b;
        SymbolList out(*a);
        for (const auto& s : *b)
            if (std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        if (out == *a)
            return a;
        return std::make_shared<const SymbolList>(std::move(out));
    }

    static std::pair<Polynomial, Polynomial> align(const Polynomial& a, const Polynomial& b)
    {
        SymbolsPtr m = merged(a.symbols_, b.symbols_);
        return {a.over(m), b.over(m)};
    }

    Polynomial over(const SymbolsPtr& target) const
    {
        if (target == symbols_ || *target == *symbols_) {
            Polynomial r(*this);
            r.symbols_ = target;
            return r;
        }
        std::vector<int> where(symbols_->size(), -1);
        for (std::size_t i = 0; i < symbols_->size(); ++i) {
            auto it = std::find(target->begin(), target->end(), (*symbols_)[i]);
            if (it != target->end())
                where[i] = static_cast<int>(it - target->begin());
        }
        Polynomial r(target);
        for (const auto& [mu, c] : terms_) {
            Multiindex m(target->size());
            for (std::size_t i = 0; i < mu.size(); ++i) {
                if (mu[i] == 0)
                    continue;
                if (where[i] < 0)
                    throw std::invalid_argument("symbol '" + (*symbols_)[i] + "' missing from target list");
                m.set(static_cast<std::size_t>(where[i]), mu[i]);
            }
            r.add_term(m, c);
        }
        return r;
    }

    void add_term(const Multiindex& mu, const GaussianRational& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(mu, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Polynomial& accumulate(const Polynomial& o, bool subtract)
    {
        SymbolsPtr m = merged(symbols_, o.symbols_);
        if (m != symbols_)
            *this = over(m);
        if (o.is_zero())
            return *this;
        auto add_all = [&](const TermMap& terms) {
            for (const auto& [mu, c] : terms)
                add_term(mu, subtract ? -c : c);
        };
        if (o.symbols_ == m || *o.symbols_ == *m)
            add_all(o.terms_);
        else
            add_all(o.over(m).terms_);
        return *this;
    }

    SymbolsPtr symbols_;
    TermMap terms_;
};

} // namespace nflin
