#include "ecslab/cli.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecslab/decoherence.hpp"
#include "ecslab/entanglement.hpp"
#include "ecslab/fock.hpp"
#include "ecslab/serialization.hpp"
#include "ecslab/sweep.hpp"
#include "ecslab/teleportation.hpp"
#include "ecslab/validation.hpp"

namespace ecslab::cli {

namespace {

using nlohmann::json;

std::vector<double> log_grid(double lo, double hi, int steps) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("log grid needs 0 < min < max");
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < steps; ++i) out[i] = lo * std::pow(hi / lo, i / (steps - 1.0));
    return out;
}

int cmd_teleport(std::ostream& out, double alpha, double eta, double theta, double phi,
                 const std::string& resource_name, bool as_json) {
    Resource resource = resource_name == "G" ? Resource::G : Resource::H;
    Complex atil = std::sqrt(eta) * alpha;
    auto [ep, em] = qubit_to_cat({theta, phi}, atil);
    CatInput input{ep, em, alpha};
    ProtocolRun run = run_protocol(input, resource, eta, default_n_cap(alpha));

    double closed_form = resource == Resource::H
                             ? p_odd_noisy(input, eta)
                             : (eta == 1.0 ? p_even_closed_form(alpha) : run.success_probability);

    if (as_json) {
        json outcomes = json::array();
        for (const auto& o : run.outcomes) {
            outcomes.push_back({{"n", o.n},
                                {"m", o.m},
                                {"probability", o.probability},
                                {"success", o.success},
                                {"fidelity", o.fidelity}});
        }
        json doc = {{"schema", 1},
                    {"alpha", alpha},
                    {"eta", eta},
                    {"theta", theta},
                    {"phi", phi},
                    {"resource", resource == Resource::G ? "G" : "H"},
                    {"eps_plus", {ep.real(), ep.imag()}},
                    {"eps_minus", {em.real(), em.imag()}},
                    {"p_success_closed_form", closed_form},
                    {"success_probability", run.success_probability},
                    {"probability_sum", run.probability_sum},
                    {"tail_bound", run.tail_bound},
                    {"input_state", to_json(make_cat(atil, ep, em))},
                    {"outcomes", std::move(outcomes)}};
        out << doc.dump(2) << '\n';
        return 0;
    }

    out << "teleport: alpha=" << format_double(alpha) << " eta=" << format_double(eta)
        << " theta=" << format_double(theta) << " phi=" << format_double(phi)
        << " resource=" << (resource == Resource::G ? "G" : "H") << "\n";
    out << "   n    m   probability  success  fidelity\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& o : run.outcomes) {
        if (o.probability < 5e-7 && !(o.n == 0 && o.m == 0)) continue;
        out << std::setw(4) << o.n << ' ' << std::setw(4) << o.m << "   " << o.probability
            << "   " << (o.success ? "yes    " : "no     ") << "  " << o.fidelity << "\n";
    }
    out.unsetf(std::ios::fixed);
    out << "success probability (enumerated): " << format_double(run.success_probability)
        << "\n";
    out << "success probability (closed form): " << format_double(closed_form) << "\n";
    out << "probability sum: " << format_double(run.probability_sum)
        << "  tail bound: " << format_double(run.tail_bound) << "\n";
    if (!run.tail_ok) out << "warning: tail bound above 1e-9; raise the count cap\n";
    return 0;
}

int cmd_entangle(std::ostream& out, double alpha, const std::string& state_name, bool as_json) {
    CoherentSuperposition state = state_name == "G" ? make_G(alpha) : make_H(alpha);
    double ent = entanglement_of(state, {0});
    std::vector<double> spectrum = reduced_density(state, {0}).eigenvalues();
    double mean_n = photon_number_expectation(state);
    if (as_json) {
        json doc = {{"schema", 1},
                    {"state", state_name},
                    {"alpha", alpha},
                    {"entanglement_ebits", ent},
                    {"reduced_eigenvalues", spectrum},
                    {"mean_photon_number", mean_n}};
        out << doc.dump(2) << '\n';
        return 0;
    }
    out << "state " << state_name << " at alpha=" << format_double(alpha) << "\n";
    out << "entanglement: " << format_double(ent) << " ebits\n";
    out << "reduced-state eigenvalues:";
    for (double v : spectrum) out << ' ' << format_double(v);
    out << "\nmean photon number: " << format_double(mean_n) << "\n";
    return 0;
}

int cmd_validate(std::ostream& out, int cutoff, std::uint64_t seed) {
    ValidationConfig config;
    config.cutoff_override = cutoff;
    config.seed = seed;
    std::vector<CheckResult> results = run_validation(config);
    for (const auto& r : results) {
        const char* tag = r.status == CheckStatus::pass   ? "[ OK ]"
                          : r.status == CheckStatus::warn ? "[WARN]"
                                                          : "[FAIL]";
        out << tag << ' ' << std::left << std::setw(34) << r.name << std::right
            << " worst delta " << format_double(r.worst_delta) << " (tol "
            << format_double(r.tolerance) << ")";
        if (!r.note.empty()) out << "  " << r.note;
        out << "\n";
    }
    bool ok = all_passed(results);
    out << (ok ? "validation passed" : "validation FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entangled coherent states: decoherence and cat-state teleportation"};
    app.require_subcommand(1);

    // fig1
    auto* fig1 = app.add_subcommand("fig1", "Decoherence fidelity sweep CSV");
    std::vector<double> fig1_etas = fig1_default_etas();
    double a0_min = 0.01, a0_max = 3.0;
    int steps = 150;
    std::string fig1_out;
    fig1->add_option("--etas", fig1_etas, "Loss parameters")->delimiter(',');
    fig1->add_option("--alpha0-min", a0_min, "Smallest alpha0");
    fig1->add_option("--alpha0-max", a0_max, "Largest alpha0");
    fig1->add_option("--steps", steps, "Number of alpha0 samples (log-spaced)");
    fig1->add_option("--out", fig1_out, "Output CSV path")->required();

    // fig2
    auto* fig2 = app.add_subcommand("fig2", "Average teleportation fidelity sweep CSV");
    std::vector<double> fig2_etas = fig2_default_etas();
    std::vector<double> fig2_alphas = fig2_default_alphas();
    bool weighted = false;
    std::string fig2_out;
    fig2->add_option("--etas", fig2_etas, "Loss parameters")->delimiter(',');
    fig2->add_option("--alphas", fig2_alphas, "Resource amplitudes")->delimiter(',');
    fig2->add_flag("--weighted", weighted, "Weight the fidelity average by success probability");
    fig2->add_option("--out", fig2_out, "Output CSV path")->required();

    // fig3
    auto* fig3 = app.add_subcommand("fig3", "Even-count success probability sweep CSV");
    std::vector<double> fig3_alphas = fig3_default_alphas();
    std::string fig3_out;
    fig3->add_option("--alphas", fig3_alphas, "Resource amplitudes")->delimiter(',');
    fig3->add_option("--out", fig3_out, "Output CSV path")->required();

    // teleport
    auto* teleport = app.add_subcommand("teleport", "Run one protocol instance");
    double alpha = 1.0, eta = 1.0, theta = std::numbers::pi / 2.0, phi = 0.0;
    std::string resource = "H";
    bool teleport_json = false;
    teleport->add_option("--alpha", alpha, "Resource amplitude")->required();
    teleport->add_option("--eta", eta, "Loss parameter")->check(CLI::Range(0.0, 1.0));
    teleport->add_option("--theta", theta, "Qubit polar angle")
        ->check(CLI::Range(0.0, std::numbers::pi));
    teleport->add_option("--phi", phi, "Qubit azimuth")
        ->check(CLI::Range(0.0, 2.0 * std::numbers::pi).description("[0, 2pi)"));
    teleport->add_option("--resource", resource, "Resource state family")
        ->check(CLI::IsMember({"H", "G"}));
    teleport->add_flag("--json", teleport_json, "Machine-readable report");

    // entangle
    auto* entangle = app.add_subcommand("entangle", "Entanglement of a resource state");
    double ent_alpha = 1.0;
    std::string ent_state = "H";
    bool ent_json = false;
    entangle->add_option("--alpha", ent_alpha, "Resource amplitude")->required();
    entangle->add_option("--state", ent_state, "State family")->check(CLI::IsMember({"H", "G"}));
    entangle->add_flag("--json", ent_json, "Machine-readable report");

    // validate
    auto* validate = app.add_subcommand("validate", "Oracle-agreement and invariant suite");
    int cutoff = 0;
    std::uint64_t seed = 0;
    validate->add_option("--cutoff", cutoff, "Override the Fock cutoff")
        ->check(CLI::PositiveNumber);
    validate->add_option("--seed", seed, "Seed for randomized checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (fig1->parsed()) {
            write_csv(fig1_sweep(fig1_etas, log_grid(a0_min, a0_max, steps)), fig1_out);
            return 0;
        }
        if (fig2->parsed()) {
            write_csv(fig2_table(fig2_alphas, fig2_etas, weighted), fig2_out);
            return 0;
        }
        if (fig3->parsed()) {
            write_csv(fig3_table(fig3_alphas), fig3_out);
            return 0;
        }
        if (teleport->parsed())
            return cmd_teleport(out, alpha, eta, theta, phi, resource, teleport_json);
        if (entangle->parsed()) return cmd_entangle(out, ent_alpha, ent_state, ent_json);
        if (validate->parsed()) return cmd_validate(out, cutoff, seed);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand selected\n";
    return 2;
}

}  // namespace ecslab::cli
