// Command-line front end: parse input files, dispatch ring / complex /
// pairing computations, render reports.
//
// Subcommands: ring, homology, pairing, cone, snf, extend. Inputs are JSON
// files in the schema documented in data/FORMATS.md; bundled examples are
// resolved by name against the data directory (override with NOVIK_DATA).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "novik/io.hpp"

namespace {

using namespace novik;

struct Options {
    std::string precision = "10";
    std::string coeffs = "int";
    std::string format = "table";
};

std::string resolve_input(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    std::string dir;
    if (const char* env = std::getenv("NOVIK_DATA"))
        dir = env;
    else
        dir = NOVIK_DEFAULT_DATA_DIR;
    fs::path candidate = fs::path(dir) / (arg + ".json");
    if (fs::exists(candidate)) return candidate.string();
    throw ParseError("no such input file or bundled example: '" + arg + "'");
}

InputFile read_input(const std::string& arg) {
    std::ifstream in(resolve_input(arg));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_input(buffer.str());
}

DegreeValue precision_of(const Options& opt, const FormPtr& form) {
    DegreeValue p = DegreeValue::rational(parse_rational(opt.precision), form->basis());
    if (compare(p, form->zero()) != Ordering::Greater)
        throw InvalidArgument("--precision must be strictly positive");
    return p;
}

// ---------------------------------------------------------------- ring

int cmd_ring(const std::string& file, const Options& opt) {
    InputFile input = read_input(file);
    if (!input.json.contains("expr"))
        throw ParseError("ring input needs an \"expr\" field");
    std::string expr = input.json.at("expr").get<std::string>();
    DegreeValue m = precision_of(opt, input.form);
    nlohmann::json out;
    std::string rendered;
    if (opt.coeffs == "rat") {
        QSeries value = parse_series_expr<Rat>(expr, input.form, m);
        rendered = render_series(value);
        out["series"] = series_to_json(value);
    } else {
        ZSeries value = parse_series_expr<Int>(expr, input.form, m);
        rendered = render_series(value);
        out["series"] = series_to_json(value);
    }
    if (opt.format == "structured")
        std::cout << out.dump(2) << "\n";
    else
        std::cout << rendered << "\n";
    return 0;
}

// ---------------------------------------------------------------- homology

void print_homology_table(const VerifyReport& verification, const DegreeValue& window,
                          const HomologySummary& h, const InequalityReport& r) {
    if (verification.ok) {
        std::cout << "boundary check: d.d = 0 verified below O(deg " << render_degree(window)
                  << ")\n";
    } else {
        std::cout << "boundary check: FAILED, d.d != 0\n";
        for (const auto& v : verification.violations)
            std::cout << "  degree " << v.degree << " entry (" << v.row << "," << v.col
                      << "): lowest term " << v.lowest_term << "\n";
        return;
    }
    std::cout << "degree | generators | betti | torsion\n";
    for (const auto& row : h.rows) {
        std::cout << "     " << row.degree << " | " << row.generator_count << " | " << row.betti
                  << " | ";
        if (row.torsion.empty()) {
            std::cout << "-";
        } else {
            bool first = true;
            for (const auto& d : row.torsion) {
                if (!first) std::cout << ", ";
                std::cout << render_series(d);
                first = false;
            }
        }
        std::cout << "\n";
    }
    std::cout << "inequalities (N_k >= b_k + q_k + q_{k+1}):\n";
    for (const auto& line : r.lines)
        std::cout << "  degree " << line.degree << ": " << line.generators << " >= "
                  << line.betti << " + " << line.torsion_here << " + " << line.torsion_above
                  << "   slack " << line.slack << "   " << (line.ok ? "ok" : "VIOLATED") << "\n";
    std::cout << "Euler identity: generators " << r.euler_generators << ", betti "
              << r.euler_betti << "   " << (r.euler_ok ? "ok" : "VIOLATED") << "\n";
    std::cout << (r.all_ok ? "all inequalities hold\n" : "INEQUALITIES VIOLATED\n");
}

nlohmann::json homology_json(const VerifyReport& verification, const HomologySummary& h,
                             const InequalityReport& r) {
    nlohmann::json out;
    out["verified"] = verification.ok;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : h.rows) {
        nlohmann::json jr;
        jr["degree"] = row.degree;
        jr["generators"] = row.generator_count;
        jr["betti"] = row.betti;
        nlohmann::json tors = nlohmann::json::array();
        for (const auto& d : row.torsion) tors.push_back(render_series(d));
        jr["torsion"] = std::move(tors);
        rows.push_back(std::move(jr));
    }
    out["rows"] = std::move(rows);
    nlohmann::json ineq = nlohmann::json::array();
    for (const auto& line : r.lines) {
        nlohmann::json jl;
        jl["degree"] = line.degree;
        jl["slack"] = line.slack;
        jl["ok"] = line.ok;
        ineq.push_back(std::move(jl));
    }
    out["inequalities"] = std::move(ineq);
    out["euler_ok"] = r.euler_ok;
    out["all_ok"] = r.all_ok;
    return out;
}

int report_homology(const VerifyReport& verification, const DegreeValue& window,
                    const ZComplex& complex, const DegreeValue& precision, const Options& opt) {
    if (!verification.ok) {
        if (opt.format == "structured") {
            std::cout << homology_json(verification, {}, {}).dump(2) << "\n";
        } else {
            print_homology_table(verification, window, {}, {});
        }
        return 1;
    }
    HomologySummary h = homology(complex, precision);
    InequalityReport r = check_inequalities(h);
    if (opt.format == "structured")
        std::cout << homology_json(verification, h, r).dump(2) << "\n";
    else
        print_homology_table(verification, window, h, r);
    return r.all_ok ? 0 : 1;
}

int cmd_homology(const std::string& file, const Options& opt) {
    InputFile input = read_input(file);
    MorseData data = parse_morse_json(input.json.at("morse"), input.form);
    AssembledComplex ac = assemble_novikov_complex(data);
    DegreeValue p = precision_of(opt, input.form);
    return report_homology(ac.verification, ac.window, ac.complex, p, opt);
}

// ---------------------------------------------------------------- extend

int cmd_extend(const std::string& file, const Options& opt) {
    InputFile input = read_input(file);
    DegreeValue p = precision_of(opt, input.form);
    ZComplex complex = parse_complex_json<Int>(input.json.at("complex"), input.form, p);
    ZComplex extended = extend_scalars(complex);
    VerifyReport verification = verify_complex(extended, p);
    return report_homology(verification, p, extended, p, opt);
}

// ---------------------------------------------------------------- snf

int cmd_snf(const std::string& file, const Options& opt) {
    InputFile input = read_input(file);
    DegreeValue p = precision_of(opt, input.form);
    ZMatrix m = parse_matrix_json<Int>(input.json.at("matrix"), input.form, p);
    SNFResult snf = smith_normal_form(m, p);
    bool certified = matrices_agree_below(snf.U * m * snf.V, snf.D, p) &&
                     is_unit(determinant(snf.U)) && is_unit(determinant(snf.V));
    if (opt.format == "structured") {
        nlohmann::json out;
        out["rank"] = snf.rank;
        nlohmann::json diag = nlohmann::json::array();
        for (const auto& d : snf.diagonal) diag.push_back(render_series(d));
        out["diagonal"] = std::move(diag);
        out["certified"] = certified;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rank: " << snf.rank << "\n";
        std::cout << "diagonal:";
        for (const auto& d : snf.diagonal) std::cout << " [" << render_series(d) << "]";
        if (snf.diagonal.empty()) std::cout << " (none)";
        std::cout << "\n";
        std::cout << "certificate U*M*V = D, det(U), det(V) units: "
                  << (certified ? "verified" : "FAILED") << " below O(deg "
                  << render_degree(p) << ")\n";
    }
    return certified ? 0 : 1;
}

// ---------------------------------------------------------------- pairing

int cmd_pairing(const std::string& morse_file, const std::string& chains_file, bool linking,
                const Options& opt) {
    InputFile input = read_input(morse_file);
    MorseData data = parse_morse_json(input.json.at("morse"), input.form);
    AssembledComplex ac = assemble_novikov_complex(data);
    DegreeValue p = precision_of(opt, input.form);

    InputFile chains_input = read_input(chains_file);
    if (!same_form(chains_input.form, input.form))
        throw DimensionMismatch("chains file declares a different degree form");
    const auto& chains = chains_input.json.at("chains");
    LambdaChain u = parse_chain_json(chains.at("u"), input.form, p);
    LambdaChain s = parse_chain_json(chains.at("s"), input.form, p);

    nlohmann::json out;
    std::string rendered;
    if (linking) {
        QSeries link = linking_number(ac, u, s, p);
        rendered = render_series(link);
        out["linking"] = series_to_json(link);
    } else {
        ZSeries value = lambda_pairing(ac, u, s);
        rendered = render_series(value);
        out["pairing"] = series_to_json(value);
    }
    if (opt.format == "structured")
        std::cout << out.dump(2) << "\n";
    else
        std::cout << rendered << "\n";
    return 0;
}

// ---------------------------------------------------------------- cone

int cmd_cone(const std::string& file, const Options& opt) {
    InputFile input = read_input(file);
    DegreeValue p = precision_of(opt, input.form);
    ConeSpec cone = parse_cone_json(input.json.at("cone"), input.form);
    auto fundamental = fundamental_lattice_points(cone);

    nlohmann::json out;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& n : fundamental) pts.push_back(n);
    out["fundamental_lattice_points"] = std::move(pts);

    std::optional<ConicalCertificate> certificate;
    if (input.json.contains("series")) {
        ZSeries alpha = parse_series_json<Int>(input.json.at("series"), input.form, p);
        certificate = certify_conical(alpha, cone);  // NotConical propagates
        out["conical_shift"] = certificate->shift;
    }

    if (opt.format == "structured") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "fundamental lattice points:";
        for (const auto& n : fundamental) std::cout << " " << lattice_str(n);
        std::cout << "\n";
        if (certificate)
            std::cout << "conical: certified with shift " << lattice_str(certificate->shift)
                      << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computer algebra for Novikov rings and Morse-Novikov complexes"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--precision", opt.precision,
                   "working precision: a positive rational degree bound")
        ->capture_default_str();
    app.add_option("--coeffs", opt.coeffs, "coefficient domain")
        ->check(CLI::IsMember({"int", "rat"}))
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "structured"}))
        ->capture_default_str();

    std::string file, chains_file;
    bool linking = false;

    CLI::App* ring = app.add_subcommand("ring", "evaluate a series expression");
    ring->add_option("file", file, "input file or bundled example name")->required();

    CLI::App* homology_cmd =
        app.add_subcommand("homology", "Novikov homology of a Morse data file");
    homology_cmd->add_option("file", file)->required();

    CLI::App* pairing = app.add_subcommand("pairing", "backward-forward pairing of two chains");
    pairing->add_option("morse", file)->required();
    pairing->add_option("chains", chains_file)->required();
    pairing->add_flag("--linking", linking, "compute the linking number of torsion classes");

    CLI::App* cone = app.add_subcommand("cone", "lattice cone membership and certificates");
    cone->add_option("file", file)->required();

    CLI::App* snf = app.add_subcommand("snf", "Smith normal form of a matrix");
    snf->add_option("file", file)->required();

    CLI::App* extend =
        app.add_subcommand("extend", "scalar extension of a polynomial complex, then homology");
    extend->add_option("file", file)->required();

    for (CLI::App* sub : {ring, homology_cmd, pairing, cone, snf, extend})
        sub->fallthrough();  // global flags may follow the subcommand

    CLI11_PARSE(app, argc, argv);

    try {
        if (ring->parsed()) return cmd_ring(file, opt);
        if (homology_cmd->parsed()) return cmd_homology(file, opt);
        if (pairing->parsed()) return cmd_pairing(file, chains_file, linking, opt);
        if (cone->parsed()) return cmd_cone(file, opt);
        if (snf->parsed()) return cmd_snf(file, opt);
        if (extend->parsed()) return cmd_extend(file, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
