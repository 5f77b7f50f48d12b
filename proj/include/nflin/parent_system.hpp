#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "normal_form.hpp"
#include "polynomial.hpp"
#include "resonance.hpp"

namespace nflin {

/// What to do with a generated monomial that is not in the kept w-basis.
enum class ClosurePolicy {
    Strict,  ///< throw NotClosed
    Project, ///< drop it (projection onto the kept subspace; breaks manifold invariance)
};

/// Linear system xi' = B xi on V = V0 (+) V1 with xi = (x_1..x_n; w_1..w_r), where
/// w_i stands for the resonant monomial x^{mu(i)}.
struct ParentSystem {
    std::size_t n = 0;
    /// Phase coordinates followed by w labels ("w1".."wr").
    SymbolList labels;
    /// basis[i] = (mu(i), alpha(i)) for w_{i+1}; monomials are distinct.
    std::vector<ResonantMonomial> basis;
    /// Eigenvalues of A (diagonal of the x block).
    Spectrum spectrum;
    /// Dense (n+r) x (n+r), entries polynomial in the parameters only.
    std::vector<std::vector<Polynomial>> B;
    /// Monomials discarded under ClosurePolicy::Project.
    std::vector<Multiindex> dropped;

    std::size_t dimension() const noexcept { return labels.size(); }
    std::size_t r() const noexcept { return basis.size(); }
    SymbolList coordinates() const { return SymbolList(labels.begin(), labels.begin() + static_cast<long>(n)); }

    /// Eigenvalue lambda_{alpha(i)} = (mu(i) . lambda) of the w-row i.
    GaussianRational w_eigenvalue(std::size_t i) const { return spectrum.dot(basis[i].mu); }

    /// phi^i(x) = x^{mu(i)} over the phase coordinates.
    Polynomial phi(std::size_t i) const { return Polynomial::monomial(coordinates(), basis[i].mu); }

    /// (B xi)_k as a polynomial in (xi, parameters).
    Polynomial row_field(std::size_t k) const
    {
        Polynomial r(labels);
        for (std::size_t j = 0; j < dimension(); ++j)
            if (!B[k][j].is_zero())
                r += B[k][j] * Polynomial::monomial(labels, Multiindex::unit(dimension(), j));
        return r;
    }
};

/// Builds the parent system by expanding, for every basis monomial w = x^mu,
///   w' = (mu.lambda) x^mu + sum_i mu_i eta_{i,i+1} x^{mu-nu(i)+nu(i+1)}
///                        + sum_{(sigma,beta,c) in F} c mu_beta x^{mu-nu(beta)+sigma}
/// and re-expressing every generated monomial in the w-basis.
inline ParentSystem build_parent(const NormalFormSystem& nf, const ResonanceTable& table,
                                 ClosurePolicy policy = ClosurePolicy::Strict)
{
    const std::size_t n = nf.size();
    const JordanStructure& jordan = nf.jordan();
    ParentSystem ps;
    ps.n = n;
    ps.spectrum = jordan.spectrum;
    ps.labels = nf.coordinates();

    std::map<Multiindex, std::size_t> column_of;
    for (const auto& e : table.entries) {
        if (e.mu.size() != n)
            throw std::invalid_argument("resonance table does not match the system dimension");
        if (column_of.count(e.mu))
            continue;
        column_of.emplace(e.mu, n + ps.basis.size());
        ps.basis.push_back(e);
        ps.labels.push_back("w" + std::to_string(ps.basis.size()));
    }
    for (const auto& label : ps.labels)
        if (std::count(ps.labels.begin(), ps.labels.end(), label) > 1)
            throw SchemaError("coordinate name '" + label + "' clashes with a parent-system label");
    for (const auto& p : nf.parameters())
        if (std::find(ps.labels.begin(), ps.labels.end(), p) != ps.labels.end())
            throw SchemaError("parameter '" + p + "' clashes with a parent-system label");

    const std::size_t dim = ps.labels.size();
    ps.B.assign(dim, std::vector<Polynomial>(dim));

    auto place = [&](std::size_t row, const Multiindex& phi, const Polynomial& coeff) {
        if (coeff.is_zero())
            return;
        auto it = column_of.find(phi);
        if (it == column_of.end()) {
            if (policy == ClosurePolicy::Strict)
                throw NotClosed(phi.exponents(), "generated monomial " + phi.str() + " in the equation for " +
                                                     ps.labels[row] + " is outside the resonant basis");
            if (std::find(ps.dropped.begin(), ps.dropped.end(), phi) == ps.dropped.end())
                ps.dropped.push_back(phi);
            return;
        }
        ps.B[row][it->second] += coeff;
    };

    // x rows: A plus the coefficients in the columns of their monomials.
    for (std::size_t i = 0; i < n; ++i) {
        ps.B[i][i] = Polynomial(jordan.spectrum[i]);
        if (jordan.coupled(i))
            ps.B[i][i + 1] = jordan.superdiagonal[i];
    }
    for (const auto& t : nf.terms())
        place(static_cast<std::size_t>(t.monomial.alpha - 1), t.monomial.mu, t.c);

    // w rows.
    for (std::size_t k = 0; k < ps.r(); ++k) {
        const Multiindex& mu = ps.basis[k].mu;
        const std::size_t row = n + k;
        ps.B[row][row] += Polynomial(jordan.spectrum.dot(mu));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (mu[i] == 0 || !jordan.coupled(i))
                continue;
            Multiindex phi = *mu.minus(Multiindex::unit(n, i)) + Multiindex::unit(n, i + 1);
            place(row, phi, jordan.superdiagonal[i].scaled(GaussianRational(mu[i])));
        }
        for (const auto& t : nf.terms()) {
            auto beta = static_cast<std::size_t>(t.monomial.alpha - 1);
            if (mu[beta] == 0)
                continue;
            Multiindex phi = *mu.minus(Multiindex::unit(n, beta)) + t.monomial.mu;
            place(row, phi, t.c.scaled(GaussianRational(mu[beta])));
        }
    }
    return ps;
}

/// E^i = w^i - phi^i(x), over the symbols (x, w).
inline std::vector<Polynomial> constraints(const ParentSystem& ps)
{
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < ps.r(); ++i) {
        Polynomial w = Polynomial::monomial(ps.labels, Multiindex::unit(ps.dimension(), ps.n + i));
        Multiindex m(ps.dimension());
        for (std::size_t j = 0; j < ps.n; ++j)
            m.set(j, ps.basis[i].mu[j]);
        out.push_back(w - Polynomial::monomial(ps.labels, m));
    }
    return out;
}

/// dE^i/dt along xi' = B xi, reduced on the manifold by w_j -> phi^j(x).
inline std::vector<Polynomial> constraint_residuals(const ParentSystem& ps)
{
    std::vector<Polynomial> rows;
    for (std::size_t k = 0; k < ps.dimension(); ++k)
        rows.push_back(ps.row_field(k));
    std::map<std::string, Polynomial> on_manifold;
    for (std::size_t i = 0; i < ps.r(); ++i)
        on_manifold.emplace(ps.labels[ps.n + i], ps.phi(i));
    std::vector<Polynomial> out;
    for (const auto& e : constraints(ps)) {
        Polynomial de;
        for (std::size_t k = 0; k < ps.dimension(); ++k) {
            Polynomial g = e.derivative(ps.labels[k]);
            if (!g.is_zero() && !rows[k].is_zero())
                de += g * rows[k];
        }
        out.push_back(de.substitute(on_manifold));
    }
    return out;
}

/// True iff every constraint derivative vanishes identically on the manifold.
inline bool verify_constraint_invariance(const ParentSystem& ps)
{
    for (const auto& r : constraint_residuals(ps))
        if (!r.is_zero())
            return false;
    return true;
}

/// Ordering of the coordinates under which B is upper triangular: every coordinate
/// precedes all coordinates it depends on. Built greedily by placing the lowest-index
/// coordinate that no unplaced coordinate depends on, so a diagonal B gives the identity.
inline std::vector<std::size_t> triangular_order(const ParentSystem& ps)
{
    const std::size_t dim = ps.dimension();
    std::vector<bool> placed(dim, false);
    std::vector<std::size_t> order;
    while (order.size() < dim) {
        bool progressed = false;
        for (std::size_t k = 0; k < dim && !progressed; ++k) {
            if (placed[k])
                continue;
            bool free = true;
            for (std::size_t j = 0; j < dim && free; ++j)
                if (j != k && !placed[j] && !ps.B[j][k].is_zero())
                    free = false;
            if (free) {
                placed[k] = true;
                order.push_back(k);
                progressed = true;
            }
        }
        if (!progressed)
            throw NoTriangularOrder("parent matrix has a dependency cycle");
    }
    return order;
}

struct StructureReport {
    bool block_triangular = false;
    bool alpha_blocks = false;
    bool triangular = false;
    /// Diagonal of B read in triangular order, sorted.
    std::vector<GaussianRational> eigenvalues;
    /// {lambda_1..lambda_n} u {lambda_alpha(1)..lambda_alpha(r)}, sorted.
    std::vector<GaussianRational> expected_eigenvalues;
    /// alpha -> number of w-coordinates in that block.
    std::map<int, std::size_t> blocks;
    std::vector<std::size_t> order;
};

/// Verifies the structural properties of a parent system; throws StructureViolation if
/// any fails.
inline StructureReport structure_report(const ParentSystem& ps)
{
    StructureReport rep;
    const std::size_t n = ps.n, dim = ps.dimension();

    rep.block_triangular = true;
    for (std::size_t k = n; k < dim; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (!ps.B[k][j].is_zero())
                rep.block_triangular = false;
    if (!rep.block_triangular)
        throw StructureViolation("w-rows depend on x-coordinates");

    rep.alpha_blocks = true;
    for (std::size_t a = 0; a < ps.r(); ++a) {
        ++rep.blocks[ps.basis[a].alpha];
        for (std::size_t b = 0; b < ps.r(); ++b)
            if (!ps.B[n + a][n + b].is_zero() && ps.basis[a].alpha != ps.basis[b].alpha)
                rep.alpha_blocks = false;
    }
    if (!rep.alpha_blocks)
        throw StructureViolation("w-block couples different alpha");

    rep.order = triangular_order(ps);
    rep.triangular = true;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (!ps.B[rep.order[a]][rep.order[b]].is_zero())
                rep.triangular = false;
    if (!rep.triangular)
        throw StructureViolation("B is not upper triangular in the computed order");

    for (std::size_t k : rep.order) {
        if (!ps.B[k][k].is_constant())
            throw StructureViolation("diagonal entry of " + ps.labels[k] + " is not a number");
        rep.eigenvalues.push_back(ps.B[k][k].constant_term());
    }
    for (std::size_t i = 0; i < n; ++i)
        rep.expected_eigenvalues.push_back(ps.spectrum[i]);
    for (const auto& b : ps.basis)
        rep.expected_eigenvalues.push_back(ps.spectrum[static_cast<std::size_t>(b.alpha - 1)]);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
    std::sort(rep.expected_eigenvalues.begin(), rep.expected_eigenvalues.end());
    if (rep.eigenvalues != rep.expected_eigenvalues)
        throw StructureViolation("eigenvalue multiset of B differs from the spectrum plus resonant targets");
    return rep;
}

/// Independent closure check via vector fields: for every table entry X = x^mu d_alpha,
/// each term of [X_f, X] must again be a resonant monomial vector from the table.
inline bool verify_bracket_closure(const NormalFormSystem& nf, const ResonanceTable& table)
{
    const std::size_t n = nf.size();
    const SymbolList& coords = nf.coordinates();
    std::vector<std::pair<Multiindex, int>> allowed;
    for (const auto& e : table.entries)
        allowed.emplace_back(e.mu, e.alpha);
    PolynomialVectorField f = nf.rhs();
    for (const auto& e : table.entries) {
        PolynomialVectorField x{coords, std::vector<Polynomial>(n, Polynomial(coords))};
        x.components[static_cast<std::size_t>(e.alpha - 1)] = Polynomial::monomial(coords, e.mu);
        PolynomialVectorField br = lie_bracket(f, x);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [m, c] : br.components[i].collect(coords))
                if (std::find(allowed.begin(), allowed.end(), std::make_pair(m, static_cast<int>(i + 1))) ==
                    allowed.end())
                    return false;
    }
    return true;
}

struct IntervalCheck {
    int m_minus = 0;
    std::optional<int> m_plus; ///< nullopt when resonances are unbounded
    bool passes = false;       ///< N outside [m_minus, m_plus]
};

struct TruncationReport {
    int N = 0;
    bool closed = false;
    std::optional<Multiindex> witness;
    std::map<int, IntervalCheck> interval_check;
    bool interval_condition = true; ///< all per-alpha checks pass
    std::size_t kept_basis_size = 0;
    std::size_t parent_dimension = 0;
};

/// Truncates at order N and attempts the parent construction with the degree <= N basis.
/// The interval test N not in [m_-(alpha), m_+(alpha)] is reported alongside as advisory.
inline TruncationReport closure_analysis(const NormalFormSystem& nf, int N)
{
    TruncationReport rep;
    rep.N = N;
    NormalFormSystem truncated = truncate_normal_form(nf, N);
    ResonanceTable kept = enumerate_resonances(nf.spectrum(), N);

    bool poincare = check_poincare(nf.spectrum()).has_value();
    ResonanceTable full = poincare ? enumerate_resonances(nf.spectrum()) : kept;
    for (const auto& [alpha, iv] : full.per_alpha) {
        IntervalCheck c;
        c.m_minus = iv.m_minus;
        if (poincare)
            c.m_plus = iv.m_plus;
        c.passes = N < c.m_minus || (c.m_plus && N > *c.m_plus);
        rep.interval_condition = rep.interval_condition && c.passes;
        rep.interval_check.emplace(alpha, c);
    }

    std::vector<Multiindex> distinct;
    for (const auto& e : kept.entries)
        if (std::find(distinct.begin(), distinct.end(), e.mu) == distinct.end())
            distinct.push_back(e.mu);
    rep.kept_basis_size = distinct.size();
    rep.parent_dimension = nf.size() + distinct.size();
    try {
        build_parent(truncated, kept, ClosurePolicy::Strict);
        rep.closed = true;
    } catch (const NotClosed& e) {
        rep.closed = false;
        rep.witness = Multiindex(e.witness());
    }
    return rep;
}

} // namespace nflin
