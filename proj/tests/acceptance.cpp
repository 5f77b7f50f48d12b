// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace nflin;
using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Example {
    std::string name;
    NormalFormSystem nf;
};

std::vector<Example> examples()
{
    return {{"ex1(k=2)", ex1(2)}, {"ex1(k=3)", ex1(3)}, {"ex2", ex2()}, {"ex3", ex3()}, {"ex5", ex5()}};
}

ParentSystem parent_of(const NormalFormSystem& nf)
{
    return build_parent(nf, enumerate_resonances(nf.jordan()));
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// 1 ------------------------------------------------------------------------

Outcome resonance_reproduction()
{
    Outcome o;
    struct Case {
        std::string name;
        JordanStructure j;
        std::size_t expected; // entries of degree <= cap
        int cap;
    };
    std::vector<Case> cases{{"ex1(k=3)", ex1(3).jordan(), 1, 100},
                            {"ex2", ex2().jordan(), 4, 100},
                            {"ex3", ex3().jordan(), 3, 100},
                            {"ex5", ex5().jordan(), 3, 3}};
    for (const auto& c : cases) {
        auto start = Clock::now();
        auto table = enumerate_resonances(c.j);
        double dt = seconds_since(start);
        std::size_t count = 0;
        for (const auto& e : table.entries)
            if (e.mu.degree() <= c.cap)
                ++count;
        o.detail << " " << c.name << ":" << count << " (" << fmt(dt) << "s)";
        o.require(count == c.expected, c.name + " count");
        o.require(dt < 1.0, c.name + " runtime");
    }
    // exact entries
    auto t2 = enumerate_resonances(Spectrum{1, 2, 5});
    std::vector<ResonantMonomial> e2{{Multiindex{2, 0, 0}, 2}, {Multiindex{1, 2, 0}, 3}, {Multiindex{3, 1, 0}, 3}, {Multiindex{5, 0, 0}, 3}};
    o.require(t2.entries == e2, "ex2 entries");
    auto t3 = enumerate_resonances(ex3().jordan());
    std::vector<ResonantMonomial> e3{{Multiindex{2, 0, 0}, 3}, {Multiindex{1, 1, 0}, 3}, {Multiindex{0, 2, 0}, 3}};
    o.require(t3.entries == e3, "ex3 entries");
    auto t1 = enumerate_resonances(Spectrum{1, 3});
    o.require(t1.entries.size() == 1 && t1.entries[0] == ResonantMonomial{Multiindex{3, 0}, 2}, "ex1 entry");
    std::set<std::pair<std::vector<int>, int>> low5;
    for (const auto& e : enumerate_resonances(ex5().jordan()).entries)
        if (e.mu.degree() <= 3)
            low5.insert({e.mu.exponents(), e.alpha});
    o.require(low5 == std::set<std::pair<std::vector<int>, int>>{{{2, 0, 0, 0}, 2}, {{1, 1, 0, 0}, 3}, {{3, 0, 0, 0}, 3}},
              "ex5 low-degree entries");
    return o;
}

// 2 ------------------------------------------------------------------------

Outcome poincare_classification()
{
    Outcome o;
    auto start = Clock::now();
    std::vector<Spectrum> yes{Spectrum{1, 2, 5}, Spectrum{1, 1, 2}, Spectrum{1, 2, 3, 10}};
    for (int k = 1; k <= 10; ++k)
        yes.push_back(Spectrum{1, k});
    for (const auto& s : yes) {
        auto cert = check_poincare(s);
        bool ok = cert.has_value();
        if (ok)
            for (std::size_t i = 0; i < s.size(); ++i)
                ok = ok && cert->project(s[i]) >= cert->margin && cert->margin > 0;
        o.require(ok, "certificate");
    }
    Spectrum rot{GaussianRational(0, 1), GaussianRational(0, -1)};
    o.require(!check_poincare(rot).has_value(), "{i,-i} rejected");
    auto master = find_master_resonance(rot, 10);
    o.require(master && *master == Multiindex{1, 1}, "master resonance (1,1)");
    double dt = seconds_since(start);
    o.require(dt < 1.0, "runtime");
    o.detail << " 13 spectra certified, {i,-i} rejected with master resonance " << (master ? master->str() : "none") << " ("
             << fmt(dt) << "s)";
    return o;
}

// 3 ------------------------------------------------------------------------

Outcome parent_structure()
{
    Outcome o;
    for (const auto& ex : examples()) {
        try {
            auto ps = parent_of(ex.nf);
            auto rep = structure_report(ps);
            o.require(rep.block_triangular && rep.alpha_blocks && rep.triangular, ex.name + " structure");
            o.require(rep.eigenvalues == rep.expected_eigenvalues, ex.name + " eigenvalues");
            o.detail << " " << ex.name << ":dim " << ps.dimension();
        } catch (const std::exception& e) {
            o.require(false, ex.name + ": " + e.what());
        }
    }
    auto rep2 = structure_report(parent_of(ex2()));
    std::vector<GaussianRational> multiset{1, 2, 2, 5, 5, 5, 5};
    o.require(rep2.eigenvalues == multiset, "ex2 multiset {1,2,5,2,5,5,5}");

    auto ps1 = parent_of(ex1(2));
    Polynomial z, one(1), two(2), c1 = var("c1");
    std::vector<std::vector<Polynomial>> expected{{one, z, z}, {z, two, c1}, {z, z, two}};
    o.require(ps1.B == expected, "ex1 k=2 B = [[1,0,0],[0,2,c1],[0,0,2]]");
    return o;
}

// 4 ------------------------------------------------------------------------

Outcome constraint_invariance()
{
    Outcome o;
    for (const auto& ex : examples()) {
        bool ok = verify_constraint_invariance(parent_of(ex.nf));
        o.require(ok, ex.name);
        o.detail << " " << ex.name << ":" << (ok ? "exact zero" : "nonzero");
    }
    return o;
}

// 5 ------------------------------------------------------------------------

Outcome integration_theorem()
{
    Outcome o;
    for (const auto& ex : examples()) {
        auto start = Clock::now();
        auto ps = parent_of(ex.nf);
        auto sol = project(restrict(solve_parent(ps), ps));
        bool ok = verify_solution_symbolic(sol, ex.nf.rhs());
        double dt = seconds_since(start);
        o.require(ok, ex.name + " identity");
        o.require(dt < 5.0, ex.name + " runtime");
        o.detail << " " << ex.name << ":" << (ok ? "exact" : "mismatch") << " (" << fmt(dt) << "s)";
    }
    return o;
}

// 6 ------------------------------------------------------------------------

/// Initial points with Euclidean norm <= 0.2.
std::vector<ComplexVector> sample_points(std::size_t n)
{
    std::vector<ComplexVector> pts;
    pts.emplace_back(n, 0.2 / std::sqrt(static_cast<double>(n)));
    ComplexVector alt(n);
    for (std::size_t i = 0; i < n; ++i)
        alt[i] = (i % 2 ? -0.2 : 0.2) / std::sqrt(static_cast<double>(n));
    pts.push_back(alt);
    ComplexVector axis(n, 0.0);
    axis[0] = 0.2;
    pts.push_back(axis);
    pts.emplace_back(n, 0.05);
    return pts;
}

std::string point_text(const ComplexVector& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.3g", x[i].real());
        s += (i ? "," : "") + std::string(buf);
    }
    return s + ")";
}

Outcome numeric_agreement()
{
    Outcome o;
    const IntegrationOptions opt{1.0, 1e-3, false};
    for (const auto& ex : examples()) {
        auto ps = parent_of(ex.nf);
        auto sol = project(restrict(solve_parent(ps), ps));
        auto b = all_ones(ex.nf);
        double worst_err = 0.0, worst_drift = 0.0, worst_rel = 0.0;
        int passing = 0, total = 0;
        for (const auto& x0 : sample_points(ex.nf.size())) {
            auto traj = integrate_numeric(ex.nf.rhs(), x0, opt, b);
            double err = compare(traj, sol, b);
            double drift = manifold_drift(ps, x0, opt, b);
            double scale = 0.0;
            for (const auto& v : traj.states.back())
                scale = std::max(scale, std::abs(v));
            ++total;
            if (err > 1e-8 || drift > 1e-8)
                o.require(false, ex.name + " at " + point_text(x0) + ": error " + fmt(err) + " (relative " + fmt(err / scale) +
                                     "), drift " + fmt(drift));
            else
                ++passing;
            worst_err = std::max(worst_err, err);
            worst_drift = std::max(worst_drift, drift);
            worst_rel = std::max(worst_rel, err / scale);
        }
        o.detail << " " << ex.name << ": " << passing << "/" << total << " points, err " << fmt(worst_err) << " (relative "
                 << fmt(worst_rel) << ") drift " << fmt(worst_drift) << ";";
    }
    return o;
}

// 7 ------------------------------------------------------------------------

Outcome truncation_dichotomy()
{
    Outcome o;
    auto rep5 = closure_analysis(ex5(), 3);
    o.require(rep5.closed && rep5.parent_dimension == 7, "ex5 N=3 closed with dimension 7");
    auto t5 = truncate_normal_form(ex5(), 3);
    auto ps5 = build_parent(t5, enumerate_resonances(ex5().spectrum(), 3));
    // w1 = x1^2, w2 = x1 x2, w3 = x1^3
    Polynomial z, c1 = var("c1"), c2 = var("c2"), c3 = var("c3");
    Polynomial p1(1), p2(2), p3(3), p10(10);
    std::vector<std::vector<Polynomial>> B{
        {p1, z, z, z, z, z, z}, {z, p2, z, z, c1, z, z}, {z, z, p3, z, z, c2, c3}, {z, z, z, p10, z, z, z},
        {z, z, z, z, p2, z, z}, {z, z, z, z, z, p3, c1}, {z, z, z, z, z, z, p3}};
    o.require(ps5.B == B, "ex5 N=3 parent matrix");
    o.detail << " ex5 N=3: closed, dim " << rep5.parent_dimension << ";";

    Bindings b{{"b1", 0.0}};
    GaussianRational i(0, 1);
    auto nf4 = NormalFormSystem::create(JordanStructure::with_flags(Spectrum{i, -i}, {0}),
                                        {{{Multiindex{2, 1}, 1}, Polynomial(1) + var("b1").scaled(i)},
                                         {{Multiindex{1, 2}, 2}, Polynomial(1) - var("b1").scaled(i)}},
                                        {"z1", "z2"});
    auto rep4 = closure_analysis(nf4, 3);
    o.require(!rep4.closed && rep4.witness && rep4.witness->degree() == 5, "ex4 N=3 NotClosed with degree-5 witness");
    try {
        build_parent(truncate_normal_form(nf4, 3), enumerate_resonances(nf4.spectrum(), 3), ClosurePolicy::Strict);
        o.require(false, "Strict build of ex4 should throw NotClosed");
    } catch (const NotClosed&) {
    }
    auto ps4 = build_parent(truncate_normal_form(nf4, 3), enumerate_resonances(nf4.spectrum(), 3), ClosurePolicy::Project);
    double drift = manifold_drift(ps4, {0.3, 0.3}, {10.0, 1e-3, false}, b);
    o.require(drift > 1e-3, "ex4 drift > 1e-3 by t=10");
    o.detail << " ex4 N=3: not closed, witness " << (rep4.witness ? rep4.witness->str() : "-") << ", drift by t=10 "
             << fmt(drift);
    return o;
}

// 8 ------------------------------------------------------------------------

using Entry = std::pair<std::vector<int>, int>;

std::set<Entry> brute_force(const std::vector<GaussianRational>& lambda, int bound)
{
    const std::size_t n = lambda.size();
    std::set<Entry> out;
    std::vector<int> mu(n, 0);
    while (true) {
        int deg = 0;
        GaussianRational dot;
        for (std::size_t i = 0; i < n; ++i) {
            deg += mu[i];
            dot += lambda[i] * GaussianRational(mu[i]);
        }
        if (deg >= 2 && deg <= bound)
            for (std::size_t a = 0; a < n; ++a)
                if (dot == lambda[a])
                    out.insert({mu, static_cast<int>(a) + 1});
        std::size_t i = 0;
        while (i < n && mu[i] == bound)
            mu[i++] = 0;
        if (i == n)
            break;
        ++mu[i];
    }
    return out;
}

bool seminormal_property(std::mt19937& rng)
{
    std::uniform_int_distribution<int> ev(-3, 4);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 4;
        std::vector<GaussianRational> lambda;
        for (std::size_t i = 0; i < n; ++i)
            lambda.emplace_back(Rational(ev(rng)), Rational(rng() % 4 == 0 ? ev(rng) : 0));
        Spectrum s(lambda);
        auto resonant = enumerate_resonances(s, 5).entries;
        std::vector<NormalFormTerm> terms;
        int count = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < count; ++k) {
            Polynomial c = rng() % 3 == 0 ? var("c" + std::to_string(k)) : Polynomial(random_gaussian(rng));
            if (!resonant.empty() && rng() % 4 != 0) {
                terms.push_back({resonant[rng() % resonant.size()], c});
            } else {
                std::vector<int> mu(n, 0);
                int deg = 2 + static_cast<int>(rng() % 4);
                for (int d = 0; d < deg; ++d)
                    ++mu[rng() % n];
                terms.push_back({{Multiindex(mu), 1 + static_cast<int>(rng() % n)}, c});
            }
        }
        auto nf = NormalFormSystem::unchecked(JordanStructure::with_flags(s, std::vector<int>(n - 1, 0)), terms);
        bool bracket = seminormal_by_bracket(nf);
        if (bracket != seminormal_by_resonance(nf))
            return false;
        (bracket ? yes : no)++;
    }
    return yes > 10 && no > 10;
}

bool enumeration_property(std::mt19937& rng)
{
    std::uniform_int_distribution<int> re(1, 8), im(-2, 2), size(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<GaussianRational> lambda;
        int n = size(rng), lo = 8, hi = 1;
        for (int i = 0; i < n; ++i) {
            int r = re(rng);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            lambda.emplace_back(Rational(r), Rational(trial % 2 ? im(rng) : 0));
        }
        std::set<Entry> got;
        for (const auto& e : enumerate_resonances(Spectrum(lambda)).entries)
            got.insert({e.mu.exponents(), e.alpha});
        if (got != brute_force(lambda, hi / lo))
            return false;
    }
    return true;
}

double rk4_order_factor()
{
    auto nf = ex2();
    auto b = all_ones(nf);
    auto ps = parent_of(nf);
    auto sol = project(restrict(solve_parent(ps), ps));
    ComplexVector x0{0.2, -0.1, 0.15};
    double coarse = compare(integrate_numeric(nf.rhs(), x0, {1.0, 0.1, false}, b), sol, b);
    double fine = compare(integrate_numeric(nf.rhs(), x0, {1.0, 0.05, false}, b), sol, b);
    return coarse / fine;
}

bool algebra_property(std::mt19937& rng)
{
    SymbolList xs{"x", "y", "z"};
    std::uniform_int_distribution<int> small(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_polynomial(rng, xs, 4, 3), q2 = random_polynomial(rng, xs, 4, 3), r = random_polynomial(rng, xs, 3, 2);
        if (!(p + q2 == q2 + p && p * q2 == q2 * p && (p * q2) * r == p * (q2 * r) && p * (q2 + r) == p * q2 + p * r))
            return false;
        if (!((p - p).is_zero() && p * Polynomial(1) == p))
            return false;
        for (const auto& v : xs)
            if (!((p * q2).derivative(v) == p.derivative(v) * q2 + p * q2.derivative(v)))
                return false;
        // substitution then exact evaluation equals evaluation at the substituted values
        std::map<std::string, GaussianRational> at{{"x", random_gaussian(rng)}, {"y", random_gaussian(rng)}, {"z", random_gaussian(rng)}};
        std::map<std::string, Polynomial> sub{{"x", Polynomial(at["x"])}, {"y", Polynomial(at["y"])}, {"z", Polynomial(at["z"])}};
        if (!(p.substitute(sub).constant_term() == p.evaluate_exact(at)))
            return false;
        // round trips through text
        GaussianRational g = random_gaussian(rng);
        if (!(parse_gaussian(g.str()) == g))
            return false;
        Rational a(small(rng), 1 + std::abs(small(rng)));
        if (parse_rational(a.str()) != a)
            return false;
        // PolyExp: derivative of antiderivative is the identity
        PolyExp f = PolyExp::term(GaussianRational(small(rng)), static_cast<unsigned>(rng() % 3), p);
        if (!(f.antiderivative().derivative() == f))
            return false;
    }
    return true;
}

Outcome property_suites()
{
    Outcome o;
    std::mt19937 rng(20261016);
    bool s = seminormal_property(rng);
    bool e = enumeration_property(rng);
    double factor = rk4_order_factor();
    bool a = algebra_property(rng);
    o.require(s, "seminormal bracket vs monomial test");
    o.require(e, "enumeration vs brute force");
    o.require(factor >= 8.0 && factor <= 32.0, "RK4 order factor");
    o.require(a, "exact algebra properties");
    o.detail << " seminormal:" << (s ? "agree" : "differ") << " enumeration:" << (e ? "agree" : "differ")
             << " rk4 factor " << fmt(factor) << " algebra:" << (a ? "hold" : "violated");
    return o;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"resonance reproduction", resonance_reproduction},
        {"Poincare classification", poincare_classification},
        {"parent structure", parent_structure},
        {"constraint invariance", constraint_invariance},
        {"end-to-end integration", integration_theorem},
        {"numeric oracle agreement", numeric_agreement},
        {"truncation dichotomy", truncation_dichotomy},
        {"property suites", property_suites},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ":" << o.detail.str() << "\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
