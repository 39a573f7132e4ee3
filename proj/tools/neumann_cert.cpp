// neumann_cert: certification, constructions, constants and verification suites.
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "neumann/certifier.hpp"
#include "neumann/constants.hpp"
#include "neumann/constructions.hpp"
#include "neumann/io.hpp"
#include "neumann/oracle.hpp"
#include "neumann/suites.hpp"

namespace {

using namespace neumann;

constexpr int kExitUnique = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitResonant = 2;
constexpr int kExitInput = 3;

struct RunConfig {
    std::string potential;
    int n = 1;
    double L = 1.0;
    int q = 1;
    std::string method = "auto";
    std::string partition;
    std::optional<double> eps;
    std::uint64_t seed = 0;
    std::string output;
    std::string solution_output;
    std::string suite;
    std::string construction;
    std::string bc = "neumann";
    int grid = 2000;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NEUMANN_CERT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("NEUMANN_CERT_SEED must be a non-negative integer");
        }
    }
    return 0;
}

void emit(const RunConfig& cfg, const json& j) {
    const std::string text = dump(j);
    if (!cfg.output.empty()) write_text(cfg.output, text);
    std::cout << text;
}

void require_n_and_length(const RunConfig& cfg) {
    if (cfg.n < 1) throw InputError("--n must be a positive integer");
    if (!(cfg.L > 0.0)) throw InputError("--L must be positive");
}

Partition parse_partition(const std::string& spec) {
    const auto first = spec.find_first_not_of(" \t");
    if (first != std::string::npos && (spec[first] == '[' || spec[first] == '{')) {
        try {
            return partition_from_json(json::parse(spec));
        } catch (const json::parse_error& e) {
            throw InputError(std::string("malformed inline partition: ") + e.what());
        }
    }
    return partition_from_json(read_json(spec));
}

MethodSelector parse_method(const std::string& name) {
    static const std::map<std::string, MethodSelector> table{
        {"auto", MethodSelector::Auto},
        {"classical", MethodSelector::Classical},
        {"dolph", MethodSelector::Dolph},
        {"l1", MethodSelector::L1},
        {"linf-partition", MethodSelector::LinfPartition},
        {"l1-partition", MethodSelector::L1Partition},
        {"greedy", MethodSelector::Greedy},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw InputError("unknown method '" + name + "'");
    return it->second;
}

BoundaryKind parse_bc(const std::string& name) {
    if (name == "neumann") return BoundaryKind::NeumannNeumann;
    if (name == "mixed-nd") return BoundaryKind::MixedND;
    if (name == "mixed-dn") return BoundaryKind::MixedDN;
    throw InputError("unknown boundary condition '" + name + "'");
}

int run_certify(const RunConfig& cfg) {
    if (cfg.n < 1) throw InputError("--n must be a positive integer");
    const Potential a = load_potential(cfg.potential);
    CertifyRequest req;
    req.method = parse_method(cfg.method);
    req.n = cfg.n;
    req.eps = cfg.eps;
    if (!cfg.partition.empty()) req.partition = parse_partition(cfg.partition);
    if ((req.method == MethodSelector::LinfPartition || req.method == MethodSelector::L1Partition) && !req.partition) {
        throw InputError("--partition is required for the partition methods");
    }
    if (req.partition && std::abs(req.partition->length() - a.length()) > 1e-12 * a.length()) {
        throw InputError("partition must end at L");
    }
    const Certificate cert = certify(a, req);
    emit(cfg, to_json(cert));
    switch (cert.verdict) {
        case Verdict::UniqueTrivial: return kExitUnique;
        case Verdict::ResonantWitness: return kExitResonant;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int run_spectrum(const RunConfig& cfg) {
    const Potential a = load_potential(cfg.potential);
    const BoundaryKind bc = parse_bc(cfg.bc);
    if (cfg.grid < 200) throw InputError("--grid must be at least 200");
    const auto eig = fd_spectrum(a, cfg.grid, bc);
    const std::vector<double> lowest(eig.begin(), eig.begin() + std::min<std::size_t>(eig.size(), 10));

    json out;
    out["fd"] = {{"grid", cfg.grid}, {"bc", cfg.bc}, {"min_abs_sigma", resonance_indicator(eig)}, {"lowest", lowest}};
    const double L = a.length();
    if (bc == BoundaryKind::NeumannNeumann) {
        out["shooting"] = {{"neumann_residual", neumann_residual(a)},
                           {"trajectory", to_json(integrate(a, {0.0, L}, 1.0, 0.0))}};
    } else {
        const bool dn = bc == BoundaryKind::MixedDN;
        out["shooting"] = {{"disfocal_residual", disfocal_residual(a, {0.0, L}, bc)},
                           {"trajectory", to_json(integrate(a, {0.0, L}, dn ? 0.0 : 1.0, dn ? 1.0 : 0.0))}};
    }
    emit(cfg, out);
    return 0;
}

int run_construct(const RunConfig& cfg) {
    require_n_and_length(cfg);
    std::optional<Construction> built;
    Potential potential = Potential::constant(cfg.L, 0.0);
    if (cfg.construction == "minimizing") {
        built = minimizing_sequence(cfg.n, cfg.L, cfg.eps.value_or(1e-3 * cfg.L));
    } else if (cfg.construction == "resonant-step") {
        if (cfg.partition.empty()) throw InputError("resonant-step needs --partition");
        built = resonant_step(parse_partition(cfg.partition));
    } else if (cfg.construction == "constant") {
        if (cfg.q < 1) throw InputError("--q must be a positive integer");
        built = constant_resonant(cfg.q, cfg.L);
    } else if (cfg.construction == "counterexample") {
        if (cfg.partition.empty()) throw InputError("counterexample needs --partition");
        potential = l1_counterexample(parse_partition(cfg.partition), cfg.eps.value_or(1e-3));
    } else {
        throw InputError("unknown construction '" + cfg.construction + "'");
    }
    if (built) potential = built->potential;
    emit(cfg, to_json(potential));
    if (!cfg.solution_output.empty()) {
        const json sol = built ? to_json(built->solution) : json(nullptr);
        write_text(cfg.solution_output, dump(sol));
    }
    return 0;
}

int run_constants(const RunConfig& cfg) {
    require_n_and_length(cfg);
    emit(cfg, {{"lambda_n", lambda_n(cfg.n, cfg.L)},
               {"lambda_n1", lambda_n(cfg.n + 1, cfg.L)},
               {"beta1", beta1(cfg.n, cfg.L)},
               {"beta_inf", beta_inf(cfg.n, cfg.L)},
               {"mu_n", mu_n(cfg.n, cfg.L)}});
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const SuiteReport report = run_suite(cfg.suite, cfg.seed);
    emit(cfg, to_json(report));
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniqueness certificates for u'' + a(x) u = 0 with Neumann conditions"};
    app.require_subcommand(1);
    RunConfig cfg;
    double eps = 0.0;

    auto* certify_cmd = app.add_subcommand("certify", "Certify uniqueness of the trivial solution");
    certify_cmd->add_option("--potential", cfg.potential, "Potential JSON file")->required();
    certify_cmd->add_option("--n", cfg.n, "Eigenvalue index n");
    certify_cmd->add_option("--method", cfg.method, "auto|classical|dolph|l1|linf-partition|l1-partition|greedy");
    certify_cmd->add_option("--partition", cfg.partition, "Partition points, inline JSON array or file");
    certify_cmd->add_option("--eps", eps, "Greedy construction slack");
    certify_cmd->add_option("--output", cfg.output, "Write the certificate here as well");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Finite-difference spectrum and shooting trajectory");
    spectrum_cmd->add_option("--potential", cfg.potential, "Potential JSON file")->required();
    spectrum_cmd->add_option("--grid", cfg.grid, "Number of finite-difference cells");
    spectrum_cmd->add_option("--bc", cfg.bc, "neumann|mixed-nd|mixed-dn");
    spectrum_cmd->add_option("--output", cfg.output, "Output path");

    auto* construct_cmd = app.add_subcommand("construct", "Generate an extremal or resonant potential");
    construct_cmd->add_option("kind", cfg.construction, "minimizing|resonant-step|constant|counterexample")
        ->required();
    construct_cmd->add_option("--n", cfg.n, "Eigenvalue index n");
    construct_cmd->add_option("--L", cfg.L, "Domain length");
    construct_cmd->add_option("--q", cfg.q, "Mode index for the constant family");
    construct_cmd->add_option("--eps", eps, "Construction parameter");
    construct_cmd->add_option("--partition", cfg.partition, "Partition points, inline JSON array or file");
    construct_cmd->add_option("--output", cfg.output, "Potential JSON output path");
    construct_cmd->add_option("--solution", cfg.solution_output, "Solution JSON output path");

    auto* constants_cmd = app.add_subcommand("constants", "Print the Lyapunov constants");
    constants_cmd->add_option("--n", cfg.n, "Eigenvalue index n")->required();
    constants_cmd->add_option("--L", cfg.L, "Domain length")->required();
    constants_cmd->add_option("--output", cfg.output, "Output path");

    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("--suite", cfg.suite, "j|f|spectrum|partition|lemma22|thm32")->required();
    auto* seed_opt = verify_cmd->add_option("--seed", cfg.seed, "Random seed");
    verify_cmd->add_option("--output", cfg.output, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (eps != 0.0 || certify_cmd->count("--eps") || construct_cmd->count("--eps")) cfg.eps = eps;
        if (seed_opt->count() == 0) cfg.seed = default_seed();
        if (*certify_cmd) return run_certify(cfg);
        if (*spectrum_cmd) return run_spectrum(cfg);
        if (*construct_cmd) return run_construct(cfg);
        if (*constants_cmd) return run_constants(cfg);
        if (*verify_cmd) return run_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return kExitInput;
    }
    return kExitInput;
}
