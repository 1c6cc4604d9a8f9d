// slag: command-line front end for the special Lagrangian verification toolkit.
//
// Exit codes: 0 success, 1 I/O, 2 validation/regime, 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slag/errors.hpp"
#include "slag/finite_diff.hpp"
#include "slag/grid_function.hpp"
#include "slag/harnack.hpp"
#include "slag/legendre.hpp"
#include "slag/num_format.hpp"
#include "slag/phase.hpp"
#include "slag/rotation.hpp"
#include "slag/solutions.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw slag::IoError("cannot open: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw slag::IoError("cannot open for writing: " + path);
    os << text;
    if (!os) throw slag::IoError("write failed: " + path);
}

int cmd_phase(int n, double theta) {
    const slag::PhaseClass cls = slag::classify_phase(n, theta, 1e-14);
    const slag::PhaseParams p = slag::derive_phase_params(n, theta);
    std::cout << "n " << p.n << '\n'
              << "Theta " << slag::fmt_g17(p.Theta) << '\n'
              << "class " << slag::to_string(cls) << '\n'
              << "theta " << slag::fmt_g17(p.theta) << '\n'
              << "delta " << slag::fmt_g17(p.delta) << '\n'
              << "phi " << slag::fmt_g17(p.phi) << '\n'
              << "sin_phi " << slag::fmt_g17(p.sin_phi) << '\n'
              << "cos_phi " << slag::fmt_g17(p.cos_phi) << '\n'
              << "rotated_phase " << slag::fmt_g17(p.rotated_phase()) << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& spec_path, std::size_t probes, std::uint64_t seed,
               const std::string& format, const std::string& out) {
    const slag::ExampleSpec spec = slag::parse_example_spec(read_file(spec_path));
    const std::vector<slag::ResidualReport> reports = slag::verify_example(spec, probes, seed);
    std::ostringstream os;
    bool failed = false;
    if (format == "csv") os << "equation,max_residual,probes,h\n";
    for (const auto& r : reports) {
        os << (format == "csv" ? slag::residual_report_csv_row(r) : slag::residual_report_json(r))
           << '\n';
        if (r.max_residual > slag::verify_tolerance(r.equation)) failed = true;
    }
    write_output(out, os.str());
    return failed ? kExitVerification : kExitOk;
}

std::vector<double> parse_m_range(const std::string& text) {
    std::vector<double> out;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        if (!text.empty()) out.push_back(std::stod(text));
        return out;
    }
    const double lo = std::stod(text.substr(0, colon));
    const double hi = std::stod(text.substr(colon + 1));
    for (double m = lo; m <= hi + 1e-12; m += 1.0) out.push_back(m);
    return out;
}

int cmd_sweep(const std::string& m_range, double theta, int n, double r, const std::string& out) {
    const std::vector<double> ms = parse_m_range(m_range);
    if (ms.empty()) throw slag::InvalidInput("sweep: empty M range");
    const std::vector<slag::SweepRecord> records = slag::estimate_sweep(ms, theta, n, r);
    write_output(out, slag::sweep_to_csv(records));
    double max_ratio = 0.0;
    for (const auto& rec : records) max_ratio = std::max(max_ratio, rec.ratio);
    std::cerr << "max_ratio " << slag::fmt_g10(max_ratio) << '\n';
    return max_ratio > 1.0 ? kExitVerification : kExitOk;
}

int cmd_chain(const std::string& curve_path, double r, const std::string& out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(curve_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw slag::IoError(std::string("curve: JSON parse error: ") + e.what());
    }
    if (!j.contains("vertices")) throw slag::InvalidInput("curve: missing 'vertices'");
    const auto rows = j.at("vertices").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw slag::InvalidInput("curve: empty vertex list");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    for (const auto& row : rows) {
        if (row.size() != dim) throw slag::InvalidInput("curve: ragged vertex list");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    const slag::Polyline curve(dim, std::move(flat));
    const slag::BallChain chain = slag::ball_chain(curve, r);
    const slag::ChainReport rep = slag::verify_chain(chain, curve);

    std::ostringstream os;
    os << "{\"r\":" << slag::fmt_g17(chain.r) << ",\"k\":" << chain.k() << ",\"params\":[";
    for (std::size_t i = 0; i < chain.params.size(); ++i)
        os << (i ? "," : "") << slag::fmt_g17(chain.params[i]);
    os << "],\"centers\":[";
    for (std::size_t i = 0; i < chain.params.size(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t a = 0; a < dim; ++a)
            os << (a ? "," : "") << slag::fmt_g17(chain.centers[i * dim + a]);
        os << "]";
    }
    os << "],\"min_pair_gap\":" << slag::fmt_g17(rep.min_pair_gap)
       << ",\"max_tangency_dev\":" << slag::fmt_g17(rep.max_tangency_dev)
       << ",\"endpoint_distance\":" << slag::fmt_g17(rep.endpoint_distance) << "}\n";
    write_output(out, os.str());
    return kExitOk;
}

int cmd_rotate(const std::string& grid_path, int n, double theta, std::optional<double> K,
               const std::string& out) {
    const slag::GridFunction u = slag::read_grid_file(grid_path);
    const slag::PhaseParams params = slag::derive_phase_params(n, theta);
    const double k = K.value_or(std::tan(params.theta));
    const slag::RotatedGraph g = slag::rotate_function(u, params, k);
    write_output(out, slag::rotated_graph_to_json(g) + "\n");
    return kExitOk;
}

int cmd_legendre(const std::string& grid_path, bool involution, const std::string& queries_path,
                 const std::string& out) {
    const slag::GridFunction f = slag::read_grid_file(grid_path);
    if (involution) {
        const slag::InvolutionReport rep = slag::involution_check(f);
        write_output(out, "sup_error " + slag::fmt_g17(rep.sup_error) + "\n");
        return kExitOk;
    }
    if (queries_path.empty())
        throw slag::InvalidInput("legendre: need --involution or --queries FILE");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(queries_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw slag::IoError(std::string("queries: JSON parse error: ") + e.what());
    }
    const auto rows = j.get<std::vector<std::vector<double>>>();
    std::vector<slag::Point> queries(rows.begin(), rows.end());
    const slag::ConjugateResult res = slag::conjugate(f, queries);
    std::ostringstream os;
    os << "{\"values\":[";
    for (std::size_t i = 0; i < res.values.size(); ++i)
        os << (i ? "," : "") << slag::fmt_g17(res.values[i]);
    os << "],\"argmax_node\":[";
    for (std::size_t i = 0; i < res.argmax_node.size(); ++i)
        os << (i ? "," : "") << res.argmax_node[i];
    os << "]}\n";
    write_output(out, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for the special Lagrangian equation"};
    app.require_subcommand(1);

    // phase
    auto* phase = app.add_subcommand("phase", "derive phase parameters and classification");
    int phase_n = 3;
    double phase_theta = 0.0;
    phase->add_option("--n", phase_n, "dimension")->required();
    phase->add_option("--theta", phase_theta, "phase Theta in radians")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "check the identities of an example family");
    std::string verify_spec, verify_format = "json", verify_out;
    std::size_t verify_probes = 1000;
    std::uint64_t verify_seed = 0;
    verify->add_option("--spec", verify_spec, "example spec JSON file")->required();
    verify->add_option("--probes", verify_probes, "probe count");
    verify->add_option("--seed", verify_seed, "probe RNG seed");
    verify->add_option("--format", verify_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("-o,--output", verify_out, "output path (stdout default)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "effective-estimate sweep over M");
    std::string sweep_m = "1:8", sweep_out;
    double sweep_theta = 0.5, sweep_r = 0.05;
    int sweep_n = 3;
    sweep->add_option("--m", sweep_m, "M range, e.g. 1:8")->required();
    sweep->add_option("--theta", sweep_theta, "embedding angle theta");
    sweep->add_option("--n", sweep_n, "ambient dimension");
    sweep->add_option("--r", sweep_r, "chain radius");
    sweep->add_option("-o,--output", sweep_out, "CSV output path (stdout default)");

    // chain
    auto* chain = app.add_subcommand("chain", "ball chain along a polyline curve");
    std::string chain_curve, chain_out;
    double chain_r = 0.1;
    chain->add_option("--curve", chain_curve, "curve JSON file")->required();
    chain->add_option("--r", chain_r, "ball radius")->required();
    chain->add_option("-o,--output", chain_out, "output path (stdout default)");

    // rotate
    auto* rotate = app.add_subcommand("rotate", "phi-rotation of a sampled potential");
    std::string rotate_grid, rotate_out;
    int rotate_n = 2;
    double rotate_theta = 0.0;
    std::optional<double> rotate_k;
    rotate->add_option("--grid", rotate_grid, "GridFunction text file")->required();
    rotate->add_option("--n", rotate_n, "dimension (must match the grid)")->required();
    rotate->add_option("--theta", rotate_theta, "phase Theta in radians")->required();
    double rotate_k_raw = 0.0;
    auto* kopt = rotate->add_option("--k", rotate_k_raw, "semi-convexity constant K (default tan theta)");
    rotate->add_option("-o,--output", rotate_out, "output path (stdout default)");

    // legendre
    auto* legendre = app.add_subcommand("legendre", "discrete convex conjugation checks");
    std::string legendre_grid, legendre_queries, legendre_out;
    bool legendre_involution = false;
    legendre->add_option("--grid", legendre_grid, "GridFunction text file")->required();
    legendre->add_flag("--involution", legendre_involution, "report ||(f*)* - f||_inf");
    legendre->add_option("--queries", legendre_queries, "query points JSON file");
    legendre->add_option("-o,--output", legendre_out, "output path (stdout default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (phase->parsed()) return cmd_phase(phase_n, phase_theta);
        if (verify->parsed())
            return cmd_verify(verify_spec, verify_probes, verify_seed, verify_format, verify_out);
        if (sweep->parsed()) return cmd_sweep(sweep_m, sweep_theta, sweep_n, sweep_r, sweep_out);
        if (chain->parsed()) return cmd_chain(chain_curve, chain_r, chain_out);
        if (rotate->parsed()) {
            if (kopt->count() > 0) rotate_k = rotate_k_raw;
            return cmd_rotate(rotate_grid, rotate_n, rotate_theta, rotate_k, rotate_out);
        }
        if (legendre->parsed())
            return cmd_legendre(legendre_grid, legendre_involution, legendre_queries, legendre_out);
    } catch (const slag::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const slag::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
