#pragma once

#include <random>
#include <string>
#include <vector>

#include <nflin/nflin.hpp>

#ifndef NFLIN_SYSTEMS_DIR
#define NFLIN_SYSTEMS_DIR "systems"
#endif

namespace testing_support {

using namespace nflin;

inline Polynomial var(const std::string& s)
{
    return Polynomial::variable(s);
}

inline GaussianRational q(long long num, long long den = 1)
{
    return GaussianRational(Rational(num, den));
}

inline std::string system_path(const std::string& name)
{
    return std::string(NFLIN_SYSTEMS_DIR) + "/" + name;
}

inline NormalFormSystem ex1(int k)
{
    return NormalFormSystem::create(JordanStructure::with_flags(Spectrum{1, k}, {0}),
                                    {{{Multiindex{k, 0}, 2}, var("c1")}}, {"x", "y"});
}

inline NormalFormSystem ex2()
{
    return NormalFormSystem::create(JordanStructure::with_flags(Spectrum{1, 2, 5}, {0, 0}),
                                    {{{Multiindex{2, 0, 0}, 2}, var("c1")},
                                     {{Multiindex{1, 2, 0}, 3}, var("c2")},
                                     {{Multiindex{3, 1, 0}, 3}, var("c3")},
                                     {{Multiindex{5, 0, 0}, 3}, var("c4")}},
                                    {"x", "y", "z"});
}

/// Seminormal form with coupling `eta` on A(1,2) and coefficients c1, c2, c3.
inline NormalFormSystem ex3(const Polynomial& eta, const Polynomial& c1, const Polynomial& c2, const Polynomial& c3)
{
    return NormalFormSystem::create(JordanStructure(Spectrum{1, 1, 2}, {eta, Polynomial()}),
                                    {{{Multiindex{2, 0, 0}, 3}, c1}, {{Multiindex{1, 1, 0}, 3}, c2}, {{Multiindex{0, 2, 0}, 3}, c3}},
                                    {"x", "y", "z"});
}

inline NormalFormSystem ex3()
{
    return ex3(var("eta"), var("c1"), var("c2"), var("c3"));
}

/// Rotation with cubic terms, in complex coordinates z1 = x + iy, z2 = x - iy.
inline NormalFormSystem ex4()
{
    GaussianRational i(0, 1);
    return NormalFormSystem::create(JordanStructure::with_flags(Spectrum{i, -i}, {0}),
                                    {{{Multiindex{2, 1}, 1}, var("a1") + var("b1").scaled(i)},
                                     {{Multiindex{1, 2}, 2}, var("a1") - var("b1").scaled(i)}},
                                    {"z1", "z2"});
}

inline NormalFormSystem ex5_truncated()
{
    return NormalFormSystem::create(JordanStructure::with_flags(Spectrum{1, 2, 3, 10}, {0, 0, 0}),
                                    {{{Multiindex{2, 0, 0, 0}, 2}, var("c1")},
                                     {{Multiindex{1, 1, 0, 0}, 3}, var("c2")},
                                     {{Multiindex{3, 0, 0, 0}, 3}, var("c3")}},
                                    {"x1", "x2", "x3", "x4"});
}

/// Truncated form plus two resonant quartic/sextic terms in the x4 equation.
inline NormalFormSystem ex5()
{
    auto terms = ex5_truncated().terms();
    terms.push_back({{Multiindex{0, 2, 2, 0}, 4}, var("c4")});
    terms.push_back({{Multiindex{4, 0, 2, 0}, 4}, var("c5")});
    return NormalFormSystem::create(JordanStructure::with_flags(Spectrum{1, 2, 3, 10}, {0, 0, 0}), terms,
                                    {"x1", "x2", "x3", "x4"});
}

inline Bindings all_ones(const NormalFormSystem& nf)
{
    Bindings b;
    for (const auto& p : nf.parameters())
        b[p] = 1.0;
    return b;
}

inline GaussianRational random_gaussian(std::mt19937& rng, int range = 3)
{
    std::uniform_int_distribution<int> d(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    return {Rational(d(rng), den(rng)), Rational(d(rng), den(rng))};
}

/// Random polynomial in the given symbols, up to `terms` terms of degree <= `degree`.
inline Polynomial random_polynomial(std::mt19937& rng, const SymbolList& symbols, int terms, int degree)
{
    std::uniform_int_distribution<int> e(0, degree);
    Polynomial p(symbols);
    for (int k = 0; k < terms; ++k) {
        std::vector<int> mu(symbols.size());
        int left = degree;
        for (auto& m : mu) {
            m = std::uniform_int_distribution<int>(0, left)(rng);
            left -= m;
        }
        p += Polynomial::monomial(symbols, Multiindex(mu), random_gaussian(rng));
    }
    return p;
}

} // namespace testing_support
