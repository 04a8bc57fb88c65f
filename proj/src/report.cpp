#include "sweepout/report.hpp"

#include "sweepout/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sweepout {

namespace {

// JSON has no infinities; they become null
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Json certificates_json(const std::vector<SplitCertificate>& certs)
{
    Json out = Json::array();
    for (const auto& c : certs)
        out.push_back({{"name", c.name},
                       {"achieved", num(c.achieved)},
                       {"required", num(c.required)},
                       {"kind", c.upper ? "upper" : "lower"},
                       {"pass", c.pass}});
    return out;
}

Json cases_json(const std::vector<CellCase>& cases)
{
    Json out = Json::array();
    for (const auto& c : cases)
        out.push_back({{"cell", c.cell},
                       {"kind", c.kind},
                       {"piece_volume", num(c.piece_volume)},
                       {"replaced_volume", num(c.replaced_volume)},
                       {"budget", num(c.budget)},
                       {"transferred_volume", num(c.transferred_volume)},
                       {"note", c.note}});
    return out;
}

Json capacitor_json(const Capacitor& c)
{
    return {{"r", num(c.r)},
            {"h", num(c.h)},
            {"region_volume", num(c.region_volume)},
            {"volume1", num(c.volume1)},
            {"volume2", num(c.volume2)},
            {"fraction1", num(c.fraction1)},
            {"fraction2", num(c.fraction2)},
            {"lambda_n", num(c.lambda_n)},
            {"separation", num(c.separation)},
            {"centers", c.ball_centers},
            {"shortfall", c.shortfall},
            {"shortfall_reason", c.shortfall_reason}};
}

Json ramp_json(const RampSplit& r)
{
    return {{"r", num(r.r)},
            {"t", num(r.t)},
            {"levels", r.levels},
            {"densified", r.densified},
            {"coarea_average", num(r.coarea_average)},
            {"coarea_bound", num(r.coarea_bound)},
            {"chain_volume", num(r.chain_volume)},
            {"budget", num(r.budget)}};
}

Json merge_json(const MergeStats& m)
{
    return {{"epsilon", num(m.epsilon)},
            {"width", num(m.width)},
            {"width1", num(m.width1)},
            {"width2", num(m.width2)},
            {"s_volume", num(m.s_volume)},
            {"eta", num(m.eta)},
            {"delta", num(m.delta)},
            {"n_small", m.n_small},
            {"splits", m.splits},
            {"interface_vertices", m.interface_vertices},
            {"bound", num(m.bound)},
            {"budget", num(m.budget)},
            {"bound_ok", m.bound_ok},
            {"budget_ok", m.budget_ok}};
}

} // namespace

Json constants_json(const ConstantTable& T)
{
    Json entries = Json::array();
    for (const auto& c : T.entries())
        entries.push_back({{"name", c.name}, {"value", num(c.value)}, {"log10", num(c.log10)}, {"symbolic", c.symbolic}});
    return {{"n", T.n}, {"constants", entries}};
}

std::string constants_text(const ConstantTable& T)
{
    std::ostringstream out;
    out << "constants for n = " << T.n << '\n';
    char buf[160];
    for (const auto& c : T.entries()) {
        std::snprintf(buf, sizeof buf, "%-14s %-24.17g log10 %-10.6f ", c.name.c_str(), c.value, c.log10);
        out << buf << c.symbolic << '\n';
    }
    return out.str();
}

Json cells_json(const CellStructure& cs)
{
    Json cells = Json::array();
    std::vector<int> centers;
    for (int c = 0; c < cs.size(); ++c) {
        const auto& cell = cs.cells[c];
        centers.push_back(cell.center);
        cells.push_back({{"id", c},
                         {"center", cell.center},
                         {"simplices", cell.simplices.size()},
                         {"volume", num(cell.volume)},
                         {"r_in", num(cell.r_in)},
                         {"r_out", num(cell.r_out)},
                         {"lambda", num(cell.lambda)}});
    }
    Json adjacency = Json::array();
    for (const auto& a : cs.adjacency) adjacency.push_back({a.a, a.b, num(a.weight)});
    return {{"rho", num(cs.rho)},
            {"lambda", num(cs.lambda)},
            {"lambda_max", num(cs.lambda_max)},
            {"N", cs.size()},
            {"volume", num(cs.volume)},
            {"eqN_lower", num(cs.eqN_lower)},
            {"eqN_upper", num(cs.eqN_upper)},
            {"eqN_inflated", cs.eqN_inflated},
            {"stranded_components", cs.stranded_components},
            {"centers", centers},
            {"cells", cells},
            {"adjacency", adjacency},
            {"log", cs.log}};
}

CellStructure cells_from_json(const FlatComplex& K, const Json& j)
{
    try {
        CellOptions opt;
        opt.lambda_max = j.at("lambda_max").get<double>();
        const auto centers = j.at("centers").get<std::vector<int>>();
        for (int c : centers)
            if (c < 0 || c >= K.num_vertices())
                throw Error(ErrorCode::ParseError, "cell center " + std::to_string(c) + " is not a vertex");
        return voronoi_cells(K, centers, j.at("rho").get<double>(), opt);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("cell certificate: ") + e.what());
    }
}

Json split_json(const RegionSplit& rs, const CellStructure& cs)
{
    const auto& r = rs.result;
    Json j = {{"volume", num(r.volume)},
              {"volume1", num(r.volume1)},
              {"volume2", num(r.volume2)},
              {"chain_volume", num(r.chain_volume)},
              {"chain_faces", r.S.size()},
              {"cells1", r.cells1},
              {"cells2", r.cells2},
              {"fallback", r.fallback},
              {"refined", r.refined},
              {"budgets", certificates_json(r.certificates)},
              {"cases", cases_json(r.cases)},
              {"log", r.log},
              {"cells", cs.size()}};
    j["capacitor"] = rs.capacitor ? capacitor_json(*rs.capacitor) : Json(nullptr);
    j["ramp"] = rs.ramp ? ramp_json(*rs.ramp) : Json(nullptr);
    j["r"] = rs.capacitor ? num(rs.capacitor->r) : Json(nullptr);
    j["ramp_failure"] = rs.ramp_failure;
    bool pass = true;
    for (const auto& c : r.certificates) pass = pass && c.pass;
    j["pass"] = pass;
    return j;
}

Json certificate_json(const SweepCertificate& cert)
{
    Json trace = Json::array();
    for (const auto& node : cert.trace) {
        Json j = {{"kind", node.kind},
                  {"cells", node.cells},
                  {"volume", num(node.volume)},
                  {"width", num(node.width)},
                  {"ratio", num(node.ratio)},
                  {"pass", node.pass}};
        if (node.kind == "cell") {
            j["budget"] = num(node.cell_budget);
            j["unrolled"] = node.unrolled;
        } else {
            j["left"] = node.left;
            j["right"] = node.right;
            j["merge"] = merge_json(node.merge);
            j["retries"] = node.retries;
            j["fallback"] = node.fallback;
            j["capacitor"] = node.capacitor ? capacitor_json(*node.capacitor) : Json(nullptr);
            j["ramp"] = node.ramp ? ramp_json(*node.ramp) : Json(nullptr);
            j["ramp_failure"] = node.ramp_failure;
            j["split_budgets"] = certificates_json(node.split_certificates);
            j["cases"] = cases_json(node.cases);
        }
        j["log"] = node.log;
        trace.push_back(std::move(j));
    }
    return {{"dim", cert.dim},
            {"width", num(cert.width)},
            {"volume", num(cert.volume)},
            {"C_n", num(cert.C_n)},
            {"bound", num(cert.bound)},
            {"slack", num(cert.slack)},
            {"epsilon", num(cert.epsilon)},
            {"min_epsilon", num(cert.min_epsilon)},
            {"rho", num(cert.rho)},
            {"lambda", num(cert.lambda)},
            {"cells", cert.cells},
            {"max_eta", num(cert.max_eta)},
            {"max_factor", num(cert.max_factor)},
            {"pl_morse", cert.pl_morse},
            {"pass", cert.pass},
            {"failures", cert.failures},
            {"root", cert.root},
            {"trace", trace},
            {"log", cert.log}};
}

Json function_json(const FlatComplex& refined, std::span<const double> values)
{
    std::ostringstream text;
    write_complex(text, refined);
    return {{"dim", refined.dim()},
            {"vertices", refined.num_vertices()},
            {"values", std::vector<double>(values.begin(), values.end())},
            {"complex", text.str()}};
}

Json bisection_json(const Bisection& b)
{
    return {{"t", num(b.t)},
            {"volume", num(b.volume)},
            {"volume_below", num(b.volume_below)},
            {"level_volume", num(b.level_volume)},
            {"chain_faces", b.chain.size()},
            {"chain_volume", num(b.chain_volume)},
            {"components_below", b.components_below},
            {"components_above", b.components_above}};
}

std::string profile_csv(const WidthProfile& p, int samples)
{
    std::ostringstream out;
    out << "kind,t,volume\n";
    char buf[96];
    if (p.breakpoints.size() < 2) return out.str();
    const double lo = p.breakpoints.front(), hi = p.breakpoints.back();
    for (int i = 0; i < samples; ++i) {
        const double t = samples > 1 ? lo + (hi - lo) * i / (samples - 1) : lo;
        std::snprintf(buf, sizeof buf, "sample,%.17g,%.17g\n", t, p(t));
        out << buf;
    }
    for (int k = 0; k < p.intervals(); ++k) {
        const auto [m, t] = p.interval_max(k);
        std::snprintf(buf, sizeof buf, "max,%.17g,%.17g\n", t, std::max(m, 0.0));
        out << buf;
    }
    return out.str();
}

Verification verify(const Json& cert, const Json& function)
{
    Verification v;
    FlatComplex K;
    std::vector<double> values;
    try {
        std::istringstream text(function.at("complex").get<std::string>());
        K = read_complex(text);
        values = function.at("values").get<std::vector<double>>();
        v.claimed = cert.at("width").get<double>();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (static_cast<int>(values.size()) != K.num_vertices())
        throw Error(ErrorCode::ParseError, "function file has " + std::to_string(values.size()) + " values for " +
                                               std::to_string(K.num_vertices()) + " vertices");

    const auto view = view_of(K);
    if (!is_pl_morse(view, values)) throw Error(ErrorCode::ValueCollision, "function values are not pairwise distinct");
    v.width = width_profile(view, values).width;
    v.volume = K.total_volume();
    const int n = K.dim();
    v.bound = build_table(n).C_n * std::pow(v.volume, (n - 1.0) / n);
    if (!(std::abs(v.width - v.claimed) <= 1e-9 * std::max(1.0, std::abs(v.width))))
        throw Error(ErrorCode::WidthMismatch, "certificate claims width " + fmt(v.claimed) + ", recomputed " + fmt(v.width));
    if (!(v.width <= v.bound))
        throw Error(ErrorCode::GlobalBudgetExceeded, "width " + fmt(v.width) + " > C_n vol^{(n-1)/n} = " + fmt(v.bound));
    if (cert.contains("failures") && !cert["failures"].empty())
        throw Error(ErrorCode::CertificateFailure, "certificate records " + cert["failures"][0].get<std::string>());
    return v;
}

} // namespace sweepout
