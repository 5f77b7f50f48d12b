#pragma once

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "gaussian_rational.hpp"
#include "normal_form.hpp"
#include "parent_system.hpp"
#include "resonance.hpp"
#include "solver.hpp"
#include "spectrum.hpp"

namespace nflin {

using Json = nlohmann::ordered_json;

namespace detail {

inline bool is_identifier(const std::string& s)
{
    static const std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
    return std::regex_match(s, ident);
}

inline Rational parse_rational_field(const Json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        try {
            return parse_rational(j.get<std::string>());
        } catch (const SchemaError& e) {
            throw SchemaError(e.what(), path);
        }
    throw SchemaError("expected an integer or a rational string", path);
}

} // namespace detail

/// Scalar: integer, "p/q", "1+2i", "-i", or {"re": .., "im": ..}.
inline GaussianRational parse_scalar(const Json& j, const std::string& path)
{
    try {
        if (j.is_number_integer())
            return GaussianRational(j.get<long long>());
        if (j.is_string())
            return parse_gaussian(j.get<std::string>());
        if (j.is_object()) {
            for (const auto& [k, v] : j.items())
                if (k != "re" && k != "im")
                    throw SchemaError("unexpected key '" + k + "'", path);
            Rational re = j.contains("re") ? detail::parse_rational_field(j["re"], path + "/re") : Rational(0);
            Rational im = j.contains("im") ? detail::parse_rational_field(j["im"], path + "/im") : Rational(0);
            return {re, im};
        }
    } catch (const SchemaError& e) {
        if (!e.path().empty())
            throw;
        throw SchemaError(e.what(), path);
    }
    throw SchemaError("expected a number, a string or {re, im}", path);
}

inline Json render_scalar(const GaussianRational& z)
{
    return z.str();
}

inline Json render_complex(const GaussianRational& z)
{
    return Json{{"re", to_string(z.re())}, {"im", to_string(z.im())}};
}

/// Polynomial in parameter symbols. Accepted forms: a scalar, a symbol name (optionally
/// with a leading '-'), or a list of {"coeff": scalar, "powers": {symbol: exponent}}.
inline Polynomial parse_polynomial(const Json& j, const std::string& path)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        bool negate = !s.empty() && s.front() == '-';
        std::string body = negate ? s.substr(1) : s;
        if (body != "i" && detail::is_identifier(body)) {
            Polynomial p = Polynomial::variable(body);
            return negate ? -p : p;
        }
    }
    if (!j.is_array())
        return Polynomial(parse_scalar(j, path));
    Polynomial sum;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& t = j[k];
        const std::string tp = path + "/" + std::to_string(k);
        if (!t.is_object() || !t.contains("coeff"))
            throw SchemaError("polynomial term needs a 'coeff' field", tp);
        Polynomial term(parse_scalar(t["coeff"], tp + "/coeff"));
        if (t.contains("powers")) {
            if (!t["powers"].is_object())
                throw SchemaError("'powers' must be an object", tp + "/powers");
            for (const auto& [sym, e] : t["powers"].items()) {
                if (!detail::is_identifier(sym) || sym == "i")
                    throw SchemaError("bad symbol name '" + sym + "'", tp + "/powers");
                if (!e.is_number_integer() || e.get<long long>() < 0)
                    throw SchemaError("exponent must be a nonnegative integer", tp + "/powers/" + sym);
                term *= pow(Polynomial::variable(sym), static_cast<unsigned>(e.get<long long>()));
            }
        }
        sum += term;
    }
    return sum;
}

/// Simplest form that parse_polynomial reads back to the same polynomial.
inline Json render_polynomial(const Polynomial& p)
{
    if (p.is_constant())
        return render_scalar(p.constant_term());
    if (p.terms().size() == 1) {
        const auto& [mu, c] = *p.terms().begin();
        if (mu.degree() == 1 && (c.is_one() || (-c).is_one())) {
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu[i] == 1)
                    return (c.is_one() ? "" : "-") + p.symbols()[i];
        }
    }
    Json out = Json::array();
    for (const auto& [mu, c] : p.terms()) {
        Json powers = Json::object();
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (mu[i] != 0)
                powers[p.symbols()[i]] = mu[i];
        out.push_back(Json{{"coeff", render_scalar(c)}, {"powers", powers}});
    }
    return out;
}

inline Json render_multiindex(const Multiindex& mu)
{
    return Json(mu.exponents());
}

// ---------------------------------------------------------------------------
// System files

inline NormalFormSystem parse_system(const Json& j)
{
    if (!j.is_object())
        throw SchemaError("system must be a JSON object", "");
    static const std::set<std::string> known{"name",          "description", "coordinates", "eigenvalues",
                                             "superdiagonal", "parameters",  "coefficients"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k))
            throw SchemaError("unknown field '" + k + "'", "/" + k);

    if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array() || j["eigenvalues"].empty())
        throw SchemaError("'eigenvalues' must be a nonempty array", "/eigenvalues");
    std::vector<GaussianRational> eig;
    for (std::size_t i = 0; i < j["eigenvalues"].size(); ++i)
        eig.push_back(parse_scalar(j["eigenvalues"][i], "/eigenvalues/" + std::to_string(i)));
    const std::size_t n = eig.size();

    SymbolList coords;
    if (j.contains("coordinates")) {
        const Json& c = j["coordinates"];
        if (!c.is_array() || c.size() != n)
            throw SchemaError("'coordinates' must list one name per eigenvalue", "/coordinates");
        for (std::size_t i = 0; i < n; ++i) {
            if (!c[i].is_string() || !detail::is_identifier(c[i].get<std::string>()) || c[i] == "i")
                throw SchemaError("bad coordinate name", "/coordinates/" + std::to_string(i));
            std::string name = c[i].get<std::string>();
            if (std::find(coords.begin(), coords.end(), name) != coords.end())
                throw SchemaError("duplicate coordinate '" + name + "'", "/coordinates/" + std::to_string(i));
            coords.push_back(name);
        }
    } else {
        coords = default_coordinates(n);
    }

    std::vector<Polynomial> sup(n - 1);
    if (j.contains("superdiagonal")) {
        const Json& s = j["superdiagonal"];
        if (!s.is_array() || s.size() + 1 != n)
            throw SchemaError("'superdiagonal' must have n-1 entries", "/superdiagonal");
        for (std::size_t i = 0; i + 1 < n; ++i)
            sup[i] = parse_polynomial(s[i], "/superdiagonal/" + std::to_string(i));
    }

    std::vector<NormalFormTerm> terms;
    std::set<std::pair<Multiindex, int>> seen;
    if (j.contains("coefficients")) {
        const Json& cs = j["coefficients"];
        if (!cs.is_array())
            throw SchemaError("'coefficients' must be an array", "/coefficients");
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const std::string p = "/coefficients/" + std::to_string(k);
            const Json& t = cs[k];
            if (!t.is_object() || !t.contains("mu") || !t.contains("alpha") || !t.contains("c"))
                throw SchemaError("coefficient needs 'mu', 'alpha' and 'c'", p);
            for (const auto& [key, v] : t.items())
                if (key != "mu" && key != "alpha" && key != "c")
                    throw SchemaError("unknown field '" + key + "'", p + "/" + key);
            const Json& mu = t["mu"];
            if (!mu.is_array() || mu.size() != n)
                throw SchemaError("'mu' must have one exponent per coordinate", p + "/mu");
            std::vector<int> exps;
            for (std::size_t i = 0; i < n; ++i) {
                if (!mu[i].is_number_integer() || mu[i].get<long long>() < 0 || mu[i].get<long long>() > 1000)
                    throw SchemaError("exponent must be a nonnegative integer", p + "/mu/" + std::to_string(i));
                exps.push_back(mu[i].get<int>());
            }
            if (!t["alpha"].is_number_integer() || t["alpha"].get<long long>() < 1 ||
                t["alpha"].get<long long>() > static_cast<long long>(n))
                throw SchemaError("'alpha' must be an index in 1..n", p + "/alpha");
            int alpha = t["alpha"].get<int>();
            Multiindex m(exps);
            if (m.degree() < 2)
                throw SchemaError("nonlinear term must have degree >= 2", p + "/mu");
            if (!seen.emplace(m, alpha).second)
                throw SchemaError("duplicate term " + m.str() + " -> " + std::to_string(alpha), p);
            Polynomial c = parse_polynomial(t["c"], p + "/c");
            for (const auto& s : c.used_symbols())
                if (std::find(coords.begin(), coords.end(), s) != coords.end())
                    throw SchemaError("coefficient uses phase coordinate '" + s + "'", p + "/c");
            terms.push_back({{m, alpha}, c});
        }
    }

    NormalFormSystem nf = NormalFormSystem::create(JordanStructure(Spectrum(eig), sup), std::move(terms), coords);

    if (j.contains("parameters")) {
        const Json& ps = j["parameters"];
        if (!ps.is_array())
            throw SchemaError("'parameters' must be an array of names", "/parameters");
        std::set<std::string> declared;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (!ps[i].is_string() || !detail::is_identifier(ps[i].get<std::string>()))
                throw SchemaError("bad parameter name", "/parameters/" + std::to_string(i));
            std::string name = ps[i].get<std::string>();
            if (std::find(coords.begin(), coords.end(), name) != coords.end())
                throw SchemaError("parameter '" + name + "' clashes with a coordinate", "/parameters/" + std::to_string(i));
            declared.insert(name);
        }
        for (const auto& s : nf.parameters())
            if (!declared.count(s))
                throw SchemaError("symbol '" + s + "' is not declared in 'parameters'", "/parameters");
    }
    return nf;
}

inline NormalFormSystem parse_system_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_system(j);
}

inline Json render_system(const NormalFormSystem& nf)
{
    Json j;
    j["coordinates"] = nf.coordinates();
    Json eig = Json::array();
    for (const auto& z : nf.spectrum().values())
        eig.push_back(render_scalar(z));
    j["eigenvalues"] = eig;
    Json sup = Json::array();
    for (const auto& p : nf.jordan().superdiagonal)
        sup.push_back(render_polynomial(p));
    j["superdiagonal"] = sup;
    j["parameters"] = nf.parameters();
    Json cs = Json::array();
    for (const auto& t : nf.terms())
        cs.push_back(Json{{"mu", render_multiindex(t.monomial.mu)}, {"alpha", t.monomial.alpha}, {"c", render_polynomial(t.c)}});
    j["coefficients"] = cs;
    return j;
}

// ---------------------------------------------------------------------------
// Reports

inline std::string monomial_text(const SymbolList& coords, const Multiindex& mu)
{
    return Polynomial::monomial(coords, mu).str();
}

inline Json render_certificate(const Spectrum& s)
{
    Json j;
    if (auto cert = check_poincare(s)) {
        j["poincare"] = true;
        j["direction"] = Json{{"re", to_string(cert->d1)}, {"im", to_string(cert->d2)}};
        j["margin"] = to_string(cert->margin);
        j["degree_bound"] = resonance_degree_bound(s, *cert);
    } else {
        j["poincare"] = false;
    }
    return j;
}

inline Json render_table(const ResonanceTable& t, const SymbolList& coords)
{
    Json j;
    Json entries = Json::array();
    for (const auto& e : t.entries)
        entries.push_back(Json{{"mu", render_multiindex(e.mu)},
                               {"alpha", e.alpha},
                               {"degree", e.mu.degree()},
                               {"monomial", monomial_text(coords, e.mu)}});
    j["count"] = t.entries.size();
    j["entries"] = entries;
    Json per = Json::object();
    for (const auto& [alpha, iv] : t.per_alpha)
        per[std::to_string(alpha)] = Json{{"m_minus", iv.m_minus}, {"m_plus", iv.m_plus}, {"count", iv.count}};
    j["per_alpha"] = per;
    j["truncation_degree"] = t.truncation_degree ? Json(*t.truncation_degree) : Json(nullptr);
    return j;
}

inline Json render_field(const PolynomialVectorField& f)
{
    Json j = Json::array();
    for (const auto& c : f.components)
        j.push_back(c.str());
    return j;
}

inline Json render_structure(const StructureReport& r, const ParentSystem& ps)
{
    Json eig = Json::array(), expected = Json::array(), order = Json::array(), blocks = Json::object();
    for (const auto& z : r.eigenvalues)
        eig.push_back(render_scalar(z));
    for (const auto& z : r.expected_eigenvalues)
        expected.push_back(render_scalar(z));
    for (auto k : r.order)
        order.push_back(ps.labels[k]);
    for (const auto& [alpha, size] : r.blocks)
        blocks[std::to_string(alpha)] = size;
    return Json{{"block_triangular", r.block_triangular},
                {"alpha_blocks", r.alpha_blocks},
                {"triangular", r.triangular},
                {"eigenvalues", eig},
                {"expected_eigenvalues", expected},
                {"blocks", blocks},
                {"order", order}};
}

inline Json render_parent(const ParentSystem& ps)
{
    Json j;
    j["n"] = ps.n;
    j["dimension"] = ps.dimension();
    j["labels"] = ps.labels;
    Json basis = Json::array();
    for (std::size_t i = 0; i < ps.r(); ++i)
        basis.push_back(Json{{"label", ps.labels[ps.n + i]},
                             {"mu", render_multiindex(ps.basis[i].mu)},
                             {"alpha", ps.basis[i].alpha},
                             {"monomial", ps.phi(i).str()}});
    j["basis"] = basis;
    Json b = Json::array();
    for (std::size_t r = 0; r < ps.dimension(); ++r)
        for (std::size_t c = 0; c < ps.dimension(); ++c)
            if (!ps.B[r][c].is_zero())
                b.push_back(Json{{"row", r}, {"col", c}, {"coeff", render_polynomial(ps.B[r][c])}});
    j["B"] = b;
    Json eqs = Json::array();
    for (std::size_t k = 0; k < ps.dimension(); ++k)
        eqs.push_back(ps.labels[k] + "' = " + ps.row_field(k).str());
    j["equations"] = eqs;
    Json cons = Json::array();
    for (const auto& e : constraints(ps))
        cons.push_back(e.str());
    j["constraints"] = cons;
    if (!ps.dropped.empty()) {
        Json d = Json::array();
        for (const auto& mu : ps.dropped)
            d.push_back(render_multiindex(mu));
        j["dropped"] = d;
    }
    return j;
}

inline Json render_polyexp(const PolyExp& f)
{
    Json out = Json::array();
    for (const auto& [lambda, tpoly] : f.terms())
        for (std::size_t k = 0; k < tpoly.size(); ++k)
            if (!tpoly[k].is_zero())
                out.push_back(Json{{"lambda", render_complex(lambda)}, {"tpower", k}, {"coeff", render_polynomial(tpoly[k])}});
    return out;
}

inline Json render_solution(const ClosedFormSolution& sol)
{
    Json j;
    j["restricted"] = sol.restricted;
    j["projected"] = sol.projected;
    j["initial_symbols"] = sol.initial_symbols;
    Json comps = Json::array();
    for (std::size_t k = 0; k < sol.size(); ++k)
        comps.push_back(Json{{"label", sol.labels[k]}, {"text", sol.components[k].str()}, {"terms", render_polyexp(sol.components[k])}});
    j["components"] = comps;
    return j;
}

inline Json render_truncation(const TruncationReport& r)
{
    Json j;
    j["N"] = r.N;
    j["closed"] = r.closed;
    j["witness"] = r.witness ? render_multiindex(*r.witness) : Json(nullptr);
    if (r.witness)
        j["witness_degree"] = r.witness->degree();
    j["kept_basis_size"] = r.kept_basis_size;
    j["parent_dimension"] = r.parent_dimension;
    Json iv = Json::object();
    for (const auto& [alpha, c] : r.interval_check)
        iv[std::to_string(alpha)] = Json{{"m_minus", c.m_minus}, {"m_plus", c.m_plus ? Json(*c.m_plus) : Json(nullptr)}, {"passes", c.passes}};
    j["interval_check"] = iv;
    j["interval_condition"] = r.interval_condition;
    return j;
}

} // namespace nflin
