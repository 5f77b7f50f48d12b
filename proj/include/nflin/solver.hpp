#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "normal_form.hpp"
#include "parent_system.hpp"
#include "polyexp.hpp"

namespace nflin {

/// Name of the initial-value symbol of a coordinate: "x" -> "x0", "w3" -> "w3_0".
inline std::string initial_symbol(const std::string& label)
{
    if (!label.empty() && std::isdigit(static_cast<unsigned char>(label.back())))
        return label + "_0";
    return label + "0";
}

struct ClosedFormSolution {
    /// Number of phase coordinates; the first n components are x(t).
    std::size_t n = 0;
    SymbolList labels;
    std::vector<PolyExp> components;
    /// Free constants the solution depends on (x0 and, before restriction, w0).
    SymbolList initial_symbols;
    bool restricted = false;
    bool projected = false;

    std::size_t size() const noexcept { return components.size(); }
};

/// Exact general solution of xi' = B xi by back-substitution along the triangular order:
/// each coordinate is a scalar linear ODE forced by already-known PolyExp terms.
inline ClosedFormSolution solve_parent(const ParentSystem& ps)
{
    const std::size_t dim = ps.dimension();
    ClosedFormSolution sol;
    sol.n = ps.n;
    sol.labels = ps.labels;
    for (const auto& l : ps.labels)
        sol.initial_symbols.push_back(initial_symbol(l));
    for (const auto& row : ps.B)
        for (const auto& entry : row)
            for (const auto& s : entry.used_symbols())
                if (std::find(sol.initial_symbols.begin(), sol.initial_symbols.end(), s) != sol.initial_symbols.end())
                    throw SchemaError("parameter '" + s + "' clashes with an initial-value symbol");

    std::vector<std::size_t> order = triangular_order(ps);
    sol.components.assign(dim, PolyExp{});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t k = *it;
        if (!ps.B[k][k].is_constant())
            throw StructureViolation("diagonal entry of " + ps.labels[k] + " is not a number");
        PolyExp forcing;
        for (std::size_t j = 0; j < dim; ++j)
            if (j != k && !ps.B[k][j].is_zero())
                forcing += sol.components[j].scaled(ps.B[k][j]);
        sol.components[k] = solve_scalar(ps.B[k][k].constant_term(), Polynomial::variable(sol.initial_symbols[k]), forcing);
    }
    return sol;
}

/// Restriction to the constraint manifold: w0_i -> x0^{mu(i)}.
inline ClosedFormSolution restrict(const ClosedFormSolution& sol, const ParentSystem& ps)
{
    if (sol.restricted)
        throw std::logic_error("solution is already restricted");
    SymbolList x0(sol.initial_symbols.begin(), sol.initial_symbols.begin() + static_cast<long>(ps.n));
    std::map<std::string, Polynomial> bindings;
    for (std::size_t i = 0; i < ps.r(); ++i)
        bindings.emplace(sol.initial_symbols[ps.n + i], Polynomial::monomial(x0, ps.basis[i].mu));
    ClosedFormSolution out = sol;
    for (auto& c : out.components)
        c = c.substitute(bindings);
    out.initial_symbols = x0;
    out.restricted = true;
    return out;
}

/// Keeps the n phase components.
inline ClosedFormSolution project(const ClosedFormSolution& sol)
{
    if (!sol.restricted)
        throw std::logic_error("project requires a restricted solution");
    ClosedFormSolution out = sol;
    out.labels.resize(sol.n);
    out.components.resize(sol.n);
    out.projected = true;
    return out;
}

namespace detail {

inline PolyExp power_helper(const PolyExp& base, int e)
{
    PolyExp r = base;
    for (int i = 1; i < e; ++i)
        r = r * base;
    return r;
}

/// Value of a polynomial field component with the phase symbols replaced by PolyExp
/// functions. `cache[j]` memoizes powers of component j.
inline PolyExp compose(const Polynomial& p, const SymbolList& phase, const std::vector<PolyExp>& values,
                       std::vector<std::map<int, PolyExp>>& cache)
{
    auto power = [&](std::size_t j, int e) -> const PolyExp& {
        auto& m = cache[j];
        if (auto it = m.find(e); it != m.end())
            return it->second;
        PolyExp r = e == 1 ? values[j] : power_helper(values[j], e);
        return m.emplace(e, std::move(r)).first->second;
    };
    PolyExp sum;
    for (const auto& [mono, coeff] : p.collect(phase)) {
        PolyExp term = PolyExp::constant(coeff);
        for (std::size_t j = 0; j < phase.size(); ++j)
            if (mono[j] > 0)
                term = term * power(j, mono[j]);
        sum += term;
    }
    return sum;
}

} // namespace detail

/// Substitutes the projected solution into the right-hand side and compares with the
/// component derivatives, as an exact PolyExp identity.
inline bool verify_solution_symbolic(const ClosedFormSolution& sol, const PolynomialVectorField& rhs)
{
    if (sol.size() != rhs.size())
        throw std::invalid_argument("solution and field have different dimensions");
    std::vector<std::map<int, PolyExp>> cache(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        if (!(sol.components[i].derivative() == detail::compose(rhs.components[i], rhs.phase, sol.components, cache)))
            return false;
    return true;
}

/// xi(0) = xi0 and xi' = B xi, both exactly, for an unrestricted parent solution.
inline bool verify_parent_solution(const ClosedFormSolution& sol, const ParentSystem& ps)
{
    if (sol.restricted || sol.size() != ps.dimension())
        throw std::invalid_argument("expects the unrestricted solution of this parent system");
    for (std::size_t k = 0; k < ps.dimension(); ++k) {
        if (!(sol.components[k].at_zero() == Polynomial::variable(sol.initial_symbols[k])))
            return false;
        PolyExp rhs;
        for (std::size_t j = 0; j < ps.dimension(); ++j)
            if (!ps.B[k][j].is_zero())
                rhs += sol.components[j].scaled(ps.B[k][j]);
        if (!(sol.components[k].derivative() == rhs))
            return false;
    }
    return true;
}

} // namespace nflin
