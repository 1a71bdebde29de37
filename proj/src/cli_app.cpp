#include "symlab/cli_app.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "symlab/certificate.hpp"
#include "symlab/discrete_dist.hpp"
#include "symlab/errors.hpp"
#include "symlab/json_io.hpp"
#include "symlab/skorokhod.hpp"
#include "symlab/symmetrizer.hpp"

namespace symlab {

namespace {

constexpr int kSchemaVersion = 1;

struct CliConfig {
    std::string p_text = "3/10";
    std::string grid_step_text = "1/20";
    std::string grid_text = "-2..1";
    std::int64_t paths = 10000;
    double dt = 1e-4;
    std::uint64_t seed = 12345;
    double t_max = 1000.0;
    std::string output = "json";
};

Rational parse_p(const std::string& text) {
    const Rational p = Rational::parse(text);
    if (!(Rational(0) < p && p < Rational(1)))
        throw DegenerateParameter("--p must lie strictly between 0 and 1, got " + text);
    return p;
}

std::pair<Rational, Rational> parse_grid_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw InvalidArgument("--grid expects LO..HI, got '" + text + "'");
    const Rational lo = Rational::parse(text.substr(0, pos));
    const Rational hi = Rational::parse(text.substr(pos + 2));
    if (!(lo < hi)) throw InvalidArgument("--grid needs LO < HI, got '" + text + "'");
    return {lo, hi};
}

SimConfig sim_config(const CliConfig& cfg) {
    SimConfig sim;
    sim.n_paths = cfg.paths;
    sim.dt = cfg.dt;
    sim.seed = cfg.seed;
    sim.t_max = cfg.t_max;
    sim.validate();
    return sim;
}

void print_table(std::ostream& out, const ordered_json& j, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            print_table(out, value, indent + 2);
        } else {
            out << pad << key << ": " << value.dump() << "\n";
        }
    }
}

void emit(const CliConfig& cfg, const ordered_json& doc, std::ostream& out) {
    if (cfg.output == "table")
        print_table(out, doc);
    else
        out << doc.dump(2) << "\n";
}

ordered_json doc_header(const std::string& command, const CliConfig& cfg) {
    return ordered_json{{"schema", kSchemaVersion},
                        {"command", command},
                        {"p", parse_p(cfg.p_text).to_string()},
                        {"seed", cfg.seed}};
}

SymmetrizerSolution run_solve(const CliConfig& cfg) {
    const Rational p = parse_p(cfg.p_text);
    const auto [lo, hi] = parse_grid_range(cfg.grid_text);
    const Rational step = Rational::parse(cfg.grid_step_text);
    return solve_symmetrizer({bernoulli(p), make_grid(lo, hi, step)});
}

int command_solve(const CliConfig& cfg, std::ostream& out) {
    const SymmetrizerSolution sol = run_solve(cfg);
    ordered_json doc = doc_header("solve", cfg);
    doc["grid"] = ordered_json{{"lo", parse_grid_range(cfg.grid_text).first.to_string()},
                               {"hi", parse_grid_range(cfg.grid_text).second.to_string()},
                               {"step", cfg.grid_step_text}};
    doc.update(to_json(sol));
    emit(cfg, doc, out);
    return sol.status == LpStatus::Optimal ? 0 : 3;
}

int command_certify(const CliConfig& cfg, std::ostream& out) {
    const double p = parse_p(cfg.p_text).to_double();
    ordered_json doc = doc_header("certify", cfg);
    doc["bound"] = certificate_bound(p);
    doc["certificate"] = to_json(verify_certificate(cfg.paths, cfg.seed, p));
    emit(cfg, doc, out);
    return 0;
}

int command_verify_rho(const CliConfig& cfg, std::ostream& out) {
    const double p = parse_p(cfg.p_text).to_double();
    ordered_json doc = doc_header("verify-rho", cfg);
    doc.update(to_json(verify_certificate(cfg.paths, cfg.seed, p)));
    emit(cfg, doc, out);
    return 0;
}

int command_embed(const CliConfig& cfg, std::ostream& out) {
    const Rational p = parse_p(cfg.p_text);
    const DiscreteDist target = center(negate(bernoulli(p)));
    const EmbeddingReport report = simulate_embedding(target, sim_config(cfg));
    ordered_json doc = doc_header("embed", cfg);
    doc.update(to_json(report));
    emit(cfg, doc, out);
    return 0;
}

int command_ito(const CliConfig& cfg, std::ostream& out) {
    const double p = parse_p(cfg.p_text).to_double();
    const SimConfig sim = sim_config(cfg);
    ordered_json doc = doc_header("ito", cfg);
    doc["dt"] = cfg.dt;
    doc["ito"] = to_json(simulate_ito_identity(p, sim));
    doc["conditioning"] = to_json(verify_conditioning(p, sim));
    emit(cfg, doc, out);
    return 0;
}

int command_all(const CliConfig& cfg, std::ostream& out) {
    const Rational p = parse_p(cfg.p_text);
    const double pd = p.to_double();

    const SymmetrizerSolution sol = run_solve(cfg);
    const double bound = certificate_bound(pd);
    const CertificateReport cert = verify_certificate(cfg.paths, cfg.seed, pd);
    const EmbeddingReport embedding =
        simulate_embedding(center(negate(bernoulli(p))), sim_config(cfg));

    ordered_json doc = doc_header("all", cfg);
    ordered_json headline;
    headline["lp_variance"] =
        sol.status == LpStatus::Optimal ? ordered_json(sol.variance) : ordered_json(nullptr);
    headline["certificate_bound"] = bound;
    headline["simulated_e_tau"] = embedding.mean_tau;
    doc["headline"] = std::move(headline);
    doc["solution"] = to_json(sol);
    doc["certificate"] = to_json(cert);
    doc["embedding"] = to_json(embedding);
    emit(cfg, doc, out);
    return sol.status == LpStatus::Optimal ? 0 : 3;
}

// Lets the documented space-separated form `--grid -2..1` through CLI11,
// which would otherwise read the value as an option name.
void merge_grid_value(std::vector<std::string>& args) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--grid" && args[i + 1].rfind('-', 0) == 0 &&
            args[i + 1].find("..") != std::string::npos) {
            args[i] += "=" + args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
    }
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-variance symmetrizers of Bernoulli(p): LP solve, "
                 "certificate bound, and Skorokhod-embedding simulations"};
    app.require_subcommand(1);

    CliConfig cfg;
    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--p", cfg.p_text, "Bernoulli parameter as an exact fraction, e.g. 3/10");
        sub->add_option("--grid-step", cfg.grid_step_text, "grid step as a fraction");
        sub->add_option("--grid", cfg.grid_text, "grid range LO..HI in fractions");
        sub->add_option("--paths", cfg.paths, "number of Monte Carlo paths / samples");
        sub->add_option("--dt", cfg.dt, "Brownian time step for discretized paths");
        sub->add_option("--seed", cfg.seed, "RNG seed")->envname("SYMLAB_SEED");
        sub->add_option("--t-max", cfg.t_max, "safety horizon for discretized paths");
        sub->add_option("--output", cfg.output, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the grid LP for the minimum-variance symmetrizer");
    CLI::App* certify = app.add_subcommand("certify", "certificate bound pq plus rho property checks");
    CLI::App* embed = app.add_subcommand("embed", "Skorokhod embedding of the centered law of -X");
    CLI::App* ito = app.add_subcommand("ito", "Monte Carlo check of the optional-sampling identity");
    CLI::App* verify_rho = app.add_subcommand("verify-rho", "random-sample checks of rho's defining properties");
    CLI::App* all = app.add_subcommand("all", "solve + certify + embed with a headline comparison");
    for (CLI::App* sub : {solve, certify, embed, ito, verify_rho, all}) add_common(sub);

    merge_grid_value(args);
    std::vector<const char*> argv;
    argv.push_back("symlab");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (solve->parsed()) return command_solve(cfg, out);
        if (certify->parsed()) return command_certify(cfg, out);
        if (embed->parsed()) return command_embed(cfg, out);
        if (ito->parsed()) return command_ito(cfg, out);
        if (verify_rho->parsed()) return command_verify_rho(cfg, out);
        if (all->parsed()) return command_all(cfg, out);
        err << "no command selected\n" << app.help();
        return 2;
    } catch (const SolverInconsistency& e) {
        err << "solver inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const CyclingSuspected& e) {
        err << "solver failure: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace symlab
