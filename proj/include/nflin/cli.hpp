#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "numeric_oracle.hpp"

namespace nflin {

/// Process exit codes of the nflin tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_check_failed = 2,
    exit_not_closed = 3,
};

namespace detail {

struct CliOptions {
    std::string input;
    std::string output;
    std::optional<int> max_degree;

    std::vector<std::string> only;
    bool verbose = false;

    bool project_policy = false;
    bool restricted = false;
    bool projected = false;

    double t_end = 1.0;
    double step = 1e-3;
    std::vector<std::string> binds;
    std::vector<std::string> x0;
    bool time_reverse = false;
    double tol = 1e-8;

    int N = 0;
};

inline Json poincare_json(const Spectrum& s, std::optional<int> max_degree)
{
    Json j = render_certificate(s);
    if (!j["poincare"].get<bool>()) {
        auto master = find_master_resonance(s, max_degree.value_or(10));
        j["master_resonance"] = master ? render_multiindex(*master) : Json(nullptr);
    }
    return j;
}

inline Complex parse_number(const std::string& text)
{
    return parse_gaussian(text).to_complex();
}

inline Bindings parse_bindings(const std::vector<std::string>& binds, const SymbolList& parameters)
{
    Bindings b;
    for (const auto& item : binds) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SchemaError("binding '" + item + "' is not of the form name=value");
        const std::string name = item.substr(0, eq);
        if (std::find(parameters.begin(), parameters.end(), name) == parameters.end())
            throw SchemaError("'" + name + "' is not a parameter of this system");
        b[name] = parse_number(item.substr(eq + 1));
    }
    for (const auto& p : parameters)
        b.try_emplace(p, Complex(1.0));
    return b;
}

inline ComplexVector parse_x0(const std::vector<std::string>& items, std::size_t n)
{
    if (items.empty())
        return ComplexVector(n, Complex(0.1));
    if (items.size() != n)
        throw SchemaError("--x0 needs " + std::to_string(n) + " values");
    ComplexVector out;
    for (const auto& s : items)
        out.push_back(parse_number(s));
    return out;
}

/// Trajectory with time axis negated, for comparing a reversed run against x(-t).
inline Trajectory reversed_time(Trajectory tr)
{
    for (auto& t : tr.times)
        t = -t;
    return tr;
}

inline void emit(const Json& j, const CliOptions& o, std::ostream& out)
{
    if (o.output.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(o.output);
    if (!f)
        throw SchemaError("cannot write '" + o.output + "'");
    f << j.dump(2) << "\n";
}

inline ResonanceTable table_for(const NormalFormSystem& nf, const CliOptions& o)
{
    return enumerate_resonances(nf.jordan(), o.max_degree);
}

inline int cmd_resonances(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    Json j;
    j["poincare"] = poincare_json(nf.spectrum(), o.max_degree);
    j["table"] = render_table(table_for(nf, o), nf.coordinates());
    emit(j, o, out);
    return exit_ok;
}

inline int cmd_check(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    auto wanted = [&](const std::string& name) {
        return o.only.empty() || std::find(o.only.begin(), o.only.end(), name) != o.only.end();
    };
    bool ok = true;
    Json j;
    if (wanted("poincare")) {
        j["poincare"] = poincare_json(nf.spectrum(), o.max_degree);
        ok = ok && j["poincare"]["poincare"].get<bool>();
    }
    if (wanted("seminormal")) {
        bool s = check_seminormal(nf);
        j["seminormal"] = s;
        if (o.verbose || !s)
            j["seminormal_residual"] = render_field(lie_bracket(nf.semisimple_field(), nf.rhs()));
        ok = ok && s;
    }
    if (wanted("full")) {
        PolynomialVectorField res = full_normal_form_residual(nf);
        bool f = res.is_zero();
        j["full_normal_form"] = f;
        if (o.verbose || !f)
            j["full_normal_form_residual"] = render_field(res);
        ok = ok && f;
    }
    if (o.verbose)
        j["rhs"] = render_field(nf.rhs());
    emit(j, o, out);
    return ok ? exit_ok : exit_check_failed;
}

inline int cmd_parent(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    ParentSystem ps = build_parent(nf, table_for(nf, o), o.project_policy ? ClosurePolicy::Project : ClosurePolicy::Strict);
    Json j = render_parent(ps);
    j["structure"] = render_structure(structure_report(ps), ps);
    j["constraint_invariance"] = verify_constraint_invariance(ps);
    emit(j, o, out);
    return exit_ok;
}

inline int cmd_solve(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    ParentSystem ps = build_parent(nf, table_for(nf, o), o.project_policy ? ClosurePolicy::Project : ClosurePolicy::Strict);
    ClosedFormSolution sol = solve_parent(ps);
    bool verified = verify_parent_solution(sol, ps);
    if (o.restricted || o.projected)
        sol = restrict(sol, ps);
    if (o.projected) {
        sol = project(sol);
        verified = verify_solution_symbolic(sol, nf.rhs());
    }
    Json j = render_solution(sol);
    j["verified"] = verified;
    emit(j, o, out);
    return verified ? exit_ok : exit_check_failed;
}

inline int cmd_verify(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    ParentSystem ps = build_parent(nf, table_for(nf, o), o.project_policy ? ClosurePolicy::Project : ClosurePolicy::Strict);
    ClosedFormSolution general = solve_parent(ps);
    ClosedFormSolution sol = project(restrict(general, ps));

    Json sym;
    sym["constraint_invariance"] = verify_constraint_invariance(ps);
    sym["parent_solution"] = verify_parent_solution(general, ps);
    sym["solution"] = verify_solution_symbolic(sol, nf.rhs());

    Bindings bindings = parse_bindings(o.binds, nf.parameters());
    ComplexVector x0 = parse_x0(o.x0, nf.size());
    IntegrationOptions opt{o.t_end, o.step, o.time_reverse};

    Json num;
    num["t_end"] = o.t_end;
    num["step"] = o.step;
    num["time_reverse"] = o.time_reverse;
    num["tolerance"] = o.tol;
    bool numeric_ok = true;
    try {
        Trajectory tr = integrate_numeric(nf.rhs(), x0, opt, bindings);
        double err = compare(o.time_reverse ? reversed_time(tr) : tr, sol, bindings);
        double drift = manifold_drift(ps, x0, opt, bindings);
        num["closed_form_error"] = err;
        num["manifold_drift"] = drift;
        numeric_ok = err <= o.tol && drift <= o.tol;
    } catch (const NonFinite& e) {
        num["non_finite_at"] = e.time();
        numeric_ok = false;
    }
    num["passes"] = numeric_ok;

    Json j;
    j["symbolic"] = sym;
    j["numeric"] = num;
    bool ok = numeric_ok && sym["constraint_invariance"].get<bool>() && sym["parent_solution"].get<bool>() &&
              sym["solution"].get<bool>();
    j["passes"] = ok;
    emit(j, o, out);
    return ok ? exit_ok : exit_check_failed;
}

inline int cmd_truncate(const CliOptions& o, std::ostream& out)
{
    NormalFormSystem nf = parse_system_file(o.input);
    TruncationReport rep = closure_analysis(nf, o.N);
    emit(render_truncation(rep), o, out);
    return rep.closed ? exit_ok : exit_not_closed;
}

} // namespace detail

/// Runs one nflin subcommand. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace detail;
    CLI::App app{"Parent linear systems for Poincare-Dulac normal forms", "nflin"};
    app.require_subcommand(1);
    CliOptions o;

    auto common = [&](CLI::App* sub, bool degree) {
        sub->add_option("-i,--input", o.input, "system JSON file")->required();
        sub->add_option("-o,--output", o.output, "write JSON here instead of stdout");
        if (degree)
            sub->add_option("--max-degree", o.max_degree, "resonance degree cap (needed for non-Poincare spectra)");
    };

    auto* res = app.add_subcommand("resonances", "enumerate resonant monomials");
    common(res, true);

    auto* check = app.add_subcommand("check", "Poincare, seminormal and full normal form tests");
    common(check, true);
    check->add_option("--only", o.only, "restrict to some of: poincare, seminormal, full")
        ->check(CLI::IsMember({"poincare", "seminormal", "full"}))
        ->delimiter(',');
    check->add_flag("--verbose", o.verbose, "print residual brackets and the vector field");

    auto* parent = app.add_subcommand("parent", "build the parent linear system");
    common(parent, true);
    parent->add_flag("--project", o.project_policy, "drop generated monomials outside the basis");

    auto* solve = app.add_subcommand("solve", "closed-form solution of the parent system");
    common(solve, true);
    solve->add_flag("--restricted", o.restricted, "restrict to the constraint manifold");
    solve->add_flag("--projected", o.projected, "restrict and keep the phase coordinates only");
    solve->add_flag("--project", o.project_policy, "drop generated monomials outside the basis");

    auto* verify = app.add_subcommand("verify", "symbolic and numeric verification");
    common(verify, true);
    verify->add_option("--t-end", o.t_end, "integration horizon")->check(CLI::PositiveNumber);
    verify->add_option("--step", o.step, "RK4 step")->check(CLI::PositiveNumber);
    verify->add_option("--bind", o.binds, "parameter value name=value (unbound parameters are 1)");
    verify->add_option("--x0", o.x0, "initial point, comma separated (default 0.1 each)")->delimiter(',');
    verify->add_flag("--time-reverse", o.time_reverse, "integrate backwards in time");
    verify->add_option("--tol", o.tol, "numeric tolerance");
    verify->add_flag("--project", o.project_policy, "drop generated monomials outside the basis");

    auto* trunc = app.add_subcommand("truncate", "closure analysis of the order-N truncation");
    common(trunc, false);
    trunc->add_option("-N", o.N, "truncation order")->required()->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    try {
        if (res->parsed())
            return cmd_resonances(o, out);
        if (check->parsed())
            return cmd_check(o, out);
        if (parent->parsed())
            return cmd_parent(o, out);
        if (solve->parsed())
            return cmd_solve(o, out);
        if (verify->parsed())
            return cmd_verify(o, out);
        return cmd_truncate(o, out);
    } catch (const NotClosed& e) {
        Json j{{"closed", false}, {"witness", e.witness()}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        err << "not closed: " << e.what() << "\n";
        return exit_not_closed;
    } catch (const NonResonantCoefficient& e) {
        err << "error: non-resonant coefficient mu=" << Multiindex(e.mu()).str() << " alpha=" << e.alpha() << ": "
            << e.what() << "\n";
        return exit_input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}

} // namespace nflin
