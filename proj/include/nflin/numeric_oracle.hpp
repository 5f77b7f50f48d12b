#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "normal_form.hpp"
#include "parent_system.hpp"
#include "solver.hpp"

namespace nflin {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Bindings = std::map<std::string, Complex>;

/// Uniformly sampled fixed-step RK4 trajectory.
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexVector> states;
    double step = 0.0;
    std::string method = "RK4";
};

struct IntegrationOptions {
    double t_end = 1.0;
    double step = 1e-3;
    /// Integrate x' = -f(x) instead (stable cases become the expanding ones).
    bool time_reverse = false;
};

namespace detail {

/// Polynomial in the state variables with numeric coefficients.
class NumericPolynomial {
public:
    NumericPolynomial(const Polynomial& p, const SymbolList& state, const Bindings& bindings)
    {
        for (const auto& [mono, coeff] : p.collect(state))
            terms_.push_back({coeff.evaluate(bindings), mono.exponents()});
    }

    Complex operator()(const ComplexVector& x) const
    {
        Complex sum = 0.0;
        for (const auto& t : terms_) {
            Complex v = t.coeff;
            for (std::size_t j = 0; j < t.exps.size(); ++j)
                for (int e = 0; e < t.exps[j]; ++e)
                    v *= x[j];
            sum += v;
        }
        return sum;
    }

private:
    struct Term {
        Complex coeff;
        std::vector<int> exps;
    };
    std::vector<Term> terms_;
};

/// PolyExp with all coefficient symbols bound.
class NumericPolyExp {
public:
    NumericPolyExp(const PolyExp& f, const Bindings& bindings)
    {
        for (const auto& [lambda, p] : f.terms()) {
            Group g{lambda.to_complex(), {}};
            for (const auto& c : p)
                g.tpoly.push_back(c.evaluate(bindings));
            groups_.push_back(std::move(g));
        }
    }

    Complex operator()(double t) const
    {
        Complex sum = 0.0;
        for (const auto& g : groups_) {
            Complex poly = 0.0;
            for (std::size_t k = g.tpoly.size(); k-- > 0;)
                poly = poly * t + g.tpoly[k];
            sum += poly * std::exp(g.lambda * t);
        }
        return sum;
    }

private:
    struct Group {
        Complex lambda;
        ComplexVector tpoly;
    };
    std::vector<Group> groups_;
};

inline bool all_finite(const ComplexVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

inline Trajectory rk4(const std::function<void(const ComplexVector&, ComplexVector&)>& f, ComplexVector x,
                      const IntegrationOptions& opt)
{
    if (!(opt.step > 0.0))
        throw std::invalid_argument("step must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(opt.t_end / opt.step));
    const double h = opt.step;
    const double sign = opt.time_reverse ? -1.0 : 1.0;
    const std::size_t n = x.size();
    Trajectory tr;
    tr.step = h;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    tr.times.push_back(0.0);
    tr.states.push_back(x);
    ComplexVector k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto eval = [&](const ComplexVector& at, ComplexVector& out) {
        f(at, out);
        if (sign < 0)
            for (auto& v : out)
                v = -v;
    };
    for (std::size_t s = 1; s <= steps; ++s) {
        eval(x, k1);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k1[i];
        eval(tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k2[i];
        eval(tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * k3[i];
        eval(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double t = static_cast<double>(s) * h;
        if (!all_finite(x))
            throw NonFinite(t, "trajectory left the finite range at t=" + std::to_string(t));
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    return tr;
}

} // namespace detail

/// Classical RK4 for x' = X(x) with all parameters bound.
inline Trajectory integrate_numeric(const PolynomialVectorField& field, const ComplexVector& x0,
                                    const IntegrationOptions& opt, const Bindings& bindings = {})
{
    if (x0.size() != field.size())
        throw std::invalid_argument("initial state has the wrong dimension");
    std::vector<detail::NumericPolynomial> comps;
    for (const auto& c : field.components)
        comps.emplace_back(c, field.phase, bindings);
    return detail::rk4(
        [&](const ComplexVector& x, ComplexVector& out) {
            for (std::size_t i = 0; i < comps.size(); ++i)
                out[i] = comps[i](x);
        },
        x0, opt);
}

/// Numeric matrix of a parent system under the given parameter values.
inline std::vector<ComplexVector> numeric_matrix(const ParentSystem& ps, const Bindings& bindings)
{
    std::vector<ComplexVector> m(ps.dimension(), ComplexVector(ps.dimension()));
    for (std::size_t k = 0; k < ps.dimension(); ++k)
        for (std::size_t j = 0; j < ps.dimension(); ++j)
            if (!ps.B[k][j].is_zero())
                m[k][j] = ps.B[k][j].evaluate(bindings);
    return m;
}

/// Classical RK4 for xi' = B xi.
inline Trajectory integrate_numeric(const ParentSystem& ps, const ComplexVector& xi0, const IntegrationOptions& opt,
                                    const Bindings& bindings = {})
{
    if (xi0.size() != ps.dimension())
        throw std::invalid_argument("initial state has the wrong dimension");
    const auto m = numeric_matrix(ps, bindings);
    return detail::rk4(
        [&](const ComplexVector& x, ComplexVector& out) {
            for (std::size_t k = 0; k < m.size(); ++k) {
                Complex s = 0.0;
                for (std::size_t j = 0; j < m.size(); ++j)
                    s += m[k][j] * x[j];
                out[k] = s;
            }
        },
        xi0, opt);
}

/// Point on the constraint manifold above x0: (x0, phi(x0)).
inline ComplexVector lift_to_manifold(const ParentSystem& ps, const ComplexVector& x0)
{
    if (x0.size() != ps.n)
        throw std::invalid_argument("initial state has the wrong dimension");
    ComplexVector xi = x0;
    for (const auto& b : ps.basis) {
        Complex v = 1.0;
        for (std::size_t j = 0; j < ps.n; ++j)
            for (int e = 0; e < b.mu[j]; ++e)
                v *= x0[j];
        xi.push_back(v);
    }
    return xi;
}

inline ComplexVector evaluate_solution(const ClosedFormSolution& sol, const Bindings& bindings, double t)
{
    ComplexVector out;
    for (const auto& c : sol.components)
        out.push_back(detail::NumericPolyExp(c, bindings)(t));
    return out;
}

/// Max over samples and components of |traj - sol|. Initial-value symbols not present in
/// `bindings` are taken from the first trajectory state.
inline double compare(const Trajectory& traj, const ClosedFormSolution& sol, Bindings bindings)
{
    for (std::size_t i = 0; i < sol.initial_symbols.size() && i < traj.states.front().size(); ++i)
        bindings.try_emplace(sol.initial_symbols[i], traj.states.front()[i]);
    std::vector<detail::NumericPolyExp> comps;
    for (const auto& c : sol.components)
        comps.emplace_back(c, bindings);
    double err = 0.0;
    for (std::size_t s = 0; s < traj.times.size(); ++s)
        for (std::size_t i = 0; i < comps.size(); ++i)
            err = std::max(err, std::abs(traj.states[s].at(i) - comps[i](traj.times[s])));
    return err;
}

/// max_t max_i |w_i(t) - phi_i(x(t))| along the numeric parent trajectory started on the manifold.
inline double manifold_drift(const ParentSystem& ps, const ComplexVector& x0, const IntegrationOptions& opt,
                             const Bindings& bindings = {})
{
    Trajectory tr = integrate_numeric(ps, lift_to_manifold(ps, x0), opt, bindings);
    double drift = 0.0;
    for (const auto& xi : tr.states) {
        ComplexVector x(xi.begin(), xi.begin() + static_cast<long>(ps.n));
        ComplexVector on = lift_to_manifold(ps, x);
        for (std::size_t i = ps.n; i < xi.size(); ++i)
            drift = std::max(drift, std::abs(xi[i] - on[i]));
    }
    return drift;
}

} // namespace nflin
