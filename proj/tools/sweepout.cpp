#include "sweepout/error.hpp"
#include "sweepout/generators.hpp"
#include "sweepout/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sweepout;

namespace {

struct Options {
    std::string input, generator;
    int dim = 2;
    std::string format = "json";
    std::optional<double> rho;
    bool rho_auto = false;
    int n_target = 64;
    double lambda_max = 4.0;
    double epsilon = 0.05;
    std::optional<double> n0;
    std::string out, cert, profile, cells, report, function;
    bool quiet = false;
    bool json_errors = false;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

FlatComplex load_input(const Options& o)
{
    if (!o.generator.empty()) return generate(o.generator);
    if (o.input.empty()) throw Error(ErrorCode::BadParams, "need --input or --generate");
    return load_complex_file(o.input);
}

// echoed into every report
Json config_json(const std::string& command, const Options& o)
{
    Json c = {{"command", command}};
    if (!o.input.empty()) c["input"] = o.input;
    if (!o.generator.empty()) c["generate"] = o.generator;
    if (o.rho) c["rho"] = *o.rho;
    if (command == "cells" || command == "split") {
        c["rho_auto"] = o.rho_auto;
        c["n_target"] = o.n_target;
        c["lambda_max"] = o.lambda_max;
    }
    if (command == "sweep") c["epsilon"] = o.epsilon;
    if (o.n0) c["n0"] = *o.n0;
    return c;
}

void say(const Options& o, const std::string& line)
{
    if (!o.quiet) std::cout << line << '\n';
}

std::string num(double x)
{
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
}

int run_constants(const Options& o)
{
    const auto T = build_table(o.dim);
    std::string text;
    if (o.format == "text") {
        text = constants_text(T);
    } else {
        Json j = constants_json(T);
        j["config"] = config_json("constants", o);
        text = dump(j);
    }
    if (!o.out.empty())
        write_file(o.out, text);
    else
        std::cout << text;
    return 0;
}

int run_generate(const Options& o)
{
    const auto K = load_input(o);
    if (!o.out.empty()) save_complex_file(o.out, K);
    Json j = {{"dim", K.dim()},
              {"vertices", K.num_vertices()},
              {"simplices", K.num_simplices()},
              {"volume", K.total_volume()},
              {"boundary_faces", K.boundary_faces().size()}};
    if (K.dim() == 2) j["max_angle_defect"] = max_angle_defect(K);
    if (o.out.empty() || !o.quiet) std::cout << dump(j);
    return 0;
}

double pick_rho(const FlatComplex& K, const Options& o)
{
    if (o.rho && !o.rho_auto) return *o.rho;
    return auto_rho(K, o.n_target);
}

int run_cells(const Options& o)
{
    const auto K = load_input(o);
    CellOptions opt;
    opt.lambda_max = o.lambda_max;
    const auto cs = build_cells(K, pick_rho(K, o), opt);
    Json j = cells_json(cs);
    j["config"] = config_json("cells", o);
    if (!o.out.empty()) write_file(o.out, dump(j));
    say(o, "cells: N = " + std::to_string(cs.size()) + ", rho = " + num(cs.rho) + ", lambda = " + num(cs.lambda));
    if (o.out.empty() && o.quiet) std::cout << dump(j);
    return 0;
}

int run_split(const Options& o)
{
    const auto K = load_input(o);
    CellStructure cs;
    if (!o.cells.empty()) {
        cs = cells_from_json(K, read_json(o.cells));
    } else {
        CellOptions opt;
        opt.lambda_max = o.lambda_max;
        cs = build_cells(K, pick_rho(K, o), opt);
    }
    std::vector<int> all(cs.size());
    for (int c = 0; c < cs.size(); ++c) all[c] = c;
    SkeletonizeOptions opt;
    opt.n0_override = o.n0;
    const auto rs = split_region(K, cs, all, opt);
    Json j = split_json(rs, cs);
    j["config"] = config_json("split", o);
    if (!o.report.empty()) write_file(o.report, dump(j));
    say(o, "split: " + std::to_string(rs.result.cells1.size()) + " | " + std::to_string(rs.result.cells2.size()) +
               " cells, chain volume " + num(rs.result.chain_volume));
    for (const auto& c : rs.result.certificates)
        if (!c.pass) throw Error(ErrorCode::CertificateFailure, "split certificate " + c.name + " failed");
    return 0;
}

int run_sweep(const Options& o)
{
    const auto K = load_input(o);
    SweepConfig cfg;
    cfg.rho = o.rho;
    cfg.epsilon = o.epsilon;
    cfg.n_target = o.n_target;
    cfg.cells.lambda_max = o.lambda_max;
    cfg.split.n0_override = o.n0;
    const auto r = sweep(K, cfg);
    Json cert = certificate_json(r.cert);
    cert["config"] = config_json("sweep", o);
    if (!o.cert.empty()) write_file(o.cert, dump(cert));
    if (!o.out.empty()) {
        Json f = function_json(r.refined, r.values);
        f["config"] = config_json("sweep", o);
        write_file(o.out, dump(f));
    }
    if (!o.profile.empty()) write_file(o.profile, profile_csv(r.profile, 512));
    say(o, "sweep: width " + num(r.cert.width) + " <= bound " + num(r.cert.bound) + ", " + std::to_string(r.cert.cells) +
               " cells, " + (r.cert.pass ? "pass" : "FAIL"));
    if (!r.cert.pass)
        throw Error(ErrorCode::CertificateFailure,
                    r.cert.failures.empty() ? std::string("sweep certificate failed") : r.cert.failures.front());
    return 0;
}

FlatComplex complex_of(const Json& f)
{
    try {
        std::istringstream text(f.at("complex").get<std::string>());
        return read_complex(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

int run_bisect(const Options& o)
{
    const Json f = read_json(o.function);
    const auto K = complex_of(f);
    const auto values = f.at("values").get<std::vector<double>>();
    const auto b = bisect_equal_volume(K, values);
    Json j = bisection_json(b);
    j["config"] = config_json("bisect", o);
    j["config"]["function"] = o.function;
    if (!o.report.empty()) write_file(o.report, dump(j));
    say(o, "bisect: t = " + num(b.t) + ", below " + num(b.volume_below) + " of " + num(b.volume) + ", level volume " +
               num(b.level_volume));
    return 0;
}

int run_verify(const Options& o)
{
    const auto v = verify(read_json(o.cert), read_json(o.function));
    say(o, "verify: width " + num(v.width) + " matches, bound " + num(v.bound));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Sweepouts of piecewise-flat complexes by PL Morse functions of bounded width"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quiet", o.quiet, "Suppress progress output");
    app.add_flag("--json-errors", o.json_errors, "Report errors as JSON on stderr");

    auto add_input = [&](CLI::App* sub) {
        auto* in = sub->add_option("--input", o.input, "Complex in the interchange format");
        auto* gen = sub->add_option("--generate", o.generator, "Generator, e.g. flat-torus-2d:16 or icosphere:3,1");
        in->excludes(gen);
    };

    auto* constants = app.add_subcommand("constants", "Constant table for one dimension");
    constants->add_option("--dim", o.dim, "Dimension n")->required();
    constants->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    constants->add_option("--out", o.out, "Output file (default stdout)");

    auto* gen = app.add_subcommand("generate", "Write a test complex");
    gen->add_option("name", o.generator, "flat-torus-2d:k, flat-torus-3d:k, icosphere:s,r, convex-polygon-disk:m[,rings]")
        ->required();
    gen->add_option("--out", o.out, "Complex file");

    auto* cells = app.add_subcommand("cells", "Quasi-convex cell structure and its certificate");
    add_input(cells);
    cells->add_option("--rho", o.rho, "Cell scale");
    cells->add_flag("--rho-auto", o.rho_auto, "rho = (vol / (omega_n N_target))^{1/n}");
    cells->add_option("--n-target", o.n_target, "Cell count target for --rho-auto");
    cells->add_option("--lambda-max", o.lambda_max, "Largest certifiable lambda");
    cells->add_option("--out", o.out, "Certificate JSON");

    auto* split = app.add_subcommand("split", "Split the whole complex once");
    add_input(split);
    split->add_option("--cells", o.cells, "Cell certificate from `cells`");
    split->add_option("--rho", o.rho, "Cell scale when no --cells is given");
    split->add_option("--lambda-max", o.lambda_max, "Largest certifiable lambda");
    split->add_option("--n0", o.n0, "Override the cell-count threshold N_0");
    split->add_option("--report", o.report, "Split report JSON");

    auto* sw = app.add_subcommand("sweep", "Build a sweepout and its certificate");
    add_input(sw);
    sw->add_option("--rho", o.rho, "Cell scale (default automatic)");
    sw->add_option("--epsilon", o.epsilon, "Collar fraction for merges");
    sw->add_option("--n-target", o.n_target, "Cell count target for automatic rho");
    sw->add_option("--lambda-max", o.lambda_max, "Largest certifiable lambda");
    sw->add_option("--n0", o.n0, "Override the cell-count threshold N_0");
    sw->add_option("--out", o.out, "Function JSON");
    sw->add_option("--cert", o.cert, "Certificate JSON");
    sw->add_option("--profile", o.profile, "Width profile CSV");

    auto* bis = app.add_subcommand("bisect", "Equal-volume level of a sweepout");
    bis->add_option("--function", o.function, "Function JSON from `sweep`")->required();
    bis->add_option("--report", o.report, "Bisection report JSON");

    auto* ver = app.add_subcommand("verify", "Recompute the width of a certified sweepout");
    ver->add_option("--cert", o.cert, "Certificate JSON")->required();
    ver->add_option("--function", o.function, "Function JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) return run_constants(o);
        if (*gen) return run_generate(o);
        if (*cells) return run_cells(o);
        if (*split) return run_split(o);
        if (*sw) return run_sweep(o);
        if (*bis) return run_bisect(o);
        if (*ver) return run_verify(o);
    } catch (const Error& e) {
        if (o.json_errors)
            std::cerr << Json{{"error", std::string(e.name())}, {"message", e.what()}}.dump() << '\n';
        else
            std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        if (o.json_errors)
            std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
        else
            std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
