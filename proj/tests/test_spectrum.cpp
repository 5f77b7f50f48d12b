#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace nflin;
using namespace testing_support;

namespace {

Rational cross(const GaussianRational& a, const GaussianRational& b)
{
    return a.re() * b.im() - a.im() * b.re();
}

bool origin_on_segment(const GaussianRational& a, const GaussianRational& b)
{
    if (cross(a, b) != 0)
        return false;
    // collinear with the origin: it lies between a and b iff their dot product is <= 0
    return a.re() * b.re() + a.im() * b.im() <= 0;
}

bool origin_in_triangle(const GaussianRational& a, const GaussianRational& b, const GaussianRational& c)
{
    Rational d1 = cross(a, b), d2 = cross(b, c), d3 = cross(c, a);
    bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(has_neg && has_pos);
}

/// Closed convex hull membership of the origin, via Caratheodory in the plane.
bool origin_in_hull(const std::vector<GaussianRational>& pts)
{
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (pts[i].is_zero())
            return true;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (origin_on_segment(pts[i], pts[j]))
                return true;
            for (std::size_t k = j + 1; k < n; ++k)
                if (origin_in_triangle(pts[i], pts[j], pts[k]))
                    return true;
        }
    }
    return false;
}

} // namespace

TEST(Poincare, ExampleSpectra)
{
    for (int k = 1; k <= 6; ++k)
        EXPECT_TRUE(check_poincare(Spectrum{1, k}).has_value()) << k;
    EXPECT_TRUE(check_poincare(Spectrum{1, 2, 5}).has_value());
    EXPECT_TRUE(check_poincare(Spectrum{1, 1, 2}).has_value());
    EXPECT_TRUE(check_poincare(Spectrum{1, 2, 3, 10}).has_value());
    EXPECT_FALSE(check_poincare(Spectrum{GaussianRational(0, 1), GaussianRational(0, -1)}).has_value());
}

TEST(Poincare, BoundaryCountsAsFailure)
{
    EXPECT_FALSE(check_poincare(Spectrum{0, 1}).has_value());
    EXPECT_FALSE(check_poincare(Spectrum{1, -1}).has_value());
    EXPECT_FALSE(check_poincare(Spectrum{GaussianRational(1, 1), GaussianRational(-1, -1)}).has_value());
    EXPECT_TRUE(check_poincare(Spectrum{GaussianRational(1, 1), GaussianRational(1, -1)}).has_value());
    // every eigenvalue on the imaginary half-axis, hull away from 0
    EXPECT_TRUE(check_poincare(Spectrum{GaussianRational(0, 1), GaussianRational(0, 3)}).has_value());
    // the cone of valid directions is narrow
    EXPECT_TRUE(check_poincare(Spectrum{GaussianRational(-5, 1), GaussianRational(5, 1)}).has_value());
}

TEST(Poincare, AgreesWithHullOracle)
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coord(-4, 4);
    std::uniform_int_distribution<int> size(1, 5);
    int poincare = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<GaussianRational> pts;
        int n = size(rng);
        for (int i = 0; i < n; ++i)
            pts.emplace_back(Rational(coord(rng)), Rational(coord(rng)));
        auto cert = check_poincare(Spectrum(pts));
        EXPECT_EQ(cert.has_value(), !origin_in_hull(pts));
        if (cert) {
            ++poincare;
            EXPECT_GT(cert->margin, 0);
            for (const auto& z : pts)
                EXPECT_GE(cert->project(z), cert->margin);
        }
    }
    EXPECT_GT(poincare, 50);
}

TEST(Poincare, DegreeBound)
{
    Spectrum s{1, 2, 5};
    auto cert = check_poincare(s);
    ASSERT_TRUE(cert);
    EXPECT_EQ(resonance_degree_bound(s, *cert), 5);
    Spectrum t{1, 2, 3, 10};
    EXPECT_EQ(resonance_degree_bound(t, *check_poincare(t)), 10);
}

TEST(Jordan, Validation)
{
    EXPECT_TRUE(validate_jordan(JordanStructure::with_flags(Spectrum{1, 1, 2}, {1, 0})).empty());
    auto bad = validate_jordan(JordanStructure::with_flags(Spectrum{1, 1, 2}, {0, 1}));
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad.front().position, 2u);
    EXPECT_TRUE(validate_jordan(JordanStructure(Spectrum{1, 1, 2}, {var("eta"), Polynomial()})).empty());
    EXPECT_FALSE(validate_jordan(JordanStructure(Spectrum{1, 1}, {})).empty());
    EXPECT_TRUE(JordanStructure::with_flags(Spectrum{1, 2}, {0}).is_diagonal());
}

TEST(Spectrum, MasterResonance)
{
    Spectrum rot{GaussianRational(0, 1), GaussianRational(0, -1)};
    auto m = find_master_resonance(rot, 5);
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, (Multiindex{1, 1}));
    EXPECT_FALSE(find_master_resonance(Spectrum{1, 2}, 10).has_value());
    EXPECT_EQ(*find_master_resonance(Spectrum{1, -2}, 10), (Multiindex{2, 1}));
    EXPECT_THROW(Spectrum(std::vector<GaussianRational>{}), std::invalid_argument);
}
