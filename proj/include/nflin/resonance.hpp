#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "spectrum.hpp"

namespace nflin {

/// x^mu e_alpha with (mu . lambda) = lambda_alpha and |mu| >= 2. alpha is 1-based.
struct ResonantMonomial {
    Multiindex mu;
    int alpha = 0;

    friend bool operator==(const ResonantMonomial&, const ResonantMonomial&) = default;
};

struct DegreeInterval {
    int m_minus = 0;
    int m_plus = 0;
    int count = 0;
};

struct ResonanceTable {
    /// Sorted by (alpha, |mu|, mu descending lex).
    std::vector<ResonantMonomial> entries;
    std::map<int, DegreeInterval> per_alpha;
    /// Set when the enumeration was capped below the Poincare bound (or no bound exists).
    std::optional<int> truncation_degree;

    bool empty() const noexcept { return entries.empty(); }
    std::size_t size() const noexcept { return entries.size(); }

    friend bool operator==(const ResonanceTable& a, const ResonanceTable& b)
    {
        return a.entries == b.entries && a.truncation_degree == b.truncation_degree;
    }
};

/// Exact test of (mu . lambda) = lambda_alpha. Returns false for |mu| < 2.
inline bool is_resonant(const Multiindex& mu, int alpha, const Spectrum& s)
{
    if (mu.size() != s.size() || alpha < 1 || alpha > static_cast<int>(s.size()) || mu.degree() < 2)
        return false;
    return s.dot(mu) == s[static_cast<std::size_t>(alpha - 1)];
}

inline std::map<int, std::pair<int, int>> resonance_intervals(const ResonanceTable& t)
{
    std::map<int, std::pair<int, int>> out;
    for (const auto& [alpha, iv] : t.per_alpha)
        out.emplace(alpha, std::make_pair(iv.m_minus, iv.m_plus));
    return out;
}

namespace detail {

inline void sort_and_summarize(ResonanceTable& table)
{
    std::sort(table.entries.begin(), table.entries.end(), [](const ResonantMonomial& a, const ResonantMonomial& b) {
        if (a.alpha != b.alpha)
            return a.alpha < b.alpha;
        int da = a.mu.degree(), db = b.mu.degree();
        if (da != db)
            return da < db;
        return a.mu > b.mu;
    });
    table.per_alpha.clear();
    for (const auto& e : table.entries) {
        int d = e.mu.degree();
        auto [it, inserted] = table.per_alpha.try_emplace(e.alpha, DegreeInterval{d, d, 0});
        it->second.m_minus = std::min(it->second.m_minus, d);
        it->second.m_plus = std::max(it->second.m_plus, d);
        ++it->second.count;
    }
}

} // namespace detail

/// All resonant monomials with 2 <= |mu| <= effective bound, decided against A_s only.
///
/// For Poincare spectra the bound is min(certificate bound, max_degree); otherwise
/// max_degree is mandatory.
inline ResonanceTable enumerate_resonances(const Spectrum& s, std::optional<int> max_degree = std::nullopt)
{
    ResonanceTable table;
    int bound = 0;
    if (auto cert = check_poincare(s)) {
        bound = resonance_degree_bound(s, *cert);
        if (max_degree && *max_degree < bound) {
            bound = *max_degree;
            table.truncation_degree = bound;
        }
    } else {
        if (!max_degree)
            throw NonPoincareUnbounded("spectrum fails the Poincare condition; a maximum degree is required");
        bound = *max_degree;
        table.truncation_degree = bound;
    }
    const std::size_t n = s.size();
    for (int d = 2; d <= bound; ++d)
        for_each_composition(n, d, [&](const Multiindex& mu) {
            GaussianRational v = s.dot(mu);
            for (std::size_t a = 0; a < n; ++a)
                if (v == s[a])
                    table.entries.push_back({mu, static_cast<int>(a + 1)});
        });
    detail::sort_and_summarize(table);
    return table;
}

inline ResonanceTable enumerate_resonances(const JordanStructure& j, std::optional<int> max_degree = std::nullopt)
{
    return enumerate_resonances(j.spectrum, max_degree);
}

} // namespace nflin
