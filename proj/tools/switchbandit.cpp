// Command-line front end: forge adversarial instances, run episodes,
// estimate expected regret, certify lower bounds, emit figure data.
//
// Exit codes: 0 success, 1 usage error, 2 validation or forge precondition
// failure, 3 certification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swb/bounds.hpp"
#include "swb/forge.hpp"
#include "swb/sim.hpp"
#include "swb/verify.hpp"

namespace {

std::string sidecar_path(const std::string& out) {
    const std::string ext = ".json";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
        return out.substr(0, out.size() - ext.size()) + ".params.json";
    return out + ".params.json";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << text;
}

void emit(const std::string& out, const nlohmann::json& j) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_text(out, j.dump(2) + "\n");
}

struct Args {
    std::string kind;
    long T = 1000;
    int K = 2;
    int m = 10;
    double eps = 0.1;
    int d = 4;
    int gamma = 2;
    std::string policy;
    long reps = 10000;
    std::uint64_t seed = swb::kDefaultSeed;
    std::string trace;
    std::string output;
    std::string instance;
    std::string theorem;
    int id = 1;
};

int cmd_forge(const Args& a) {
    swb::Instance inst;
    nlohmann::json sidecar;
    if (a.kind == "ucb") {
        auto [i, p] = swb::forge_ucb(a.T, a.K);
        inst = std::move(i);
        sidecar = {{"alpha", p.alpha}, {"c", p.c}, {"delta", p.delta},
                   {"breakpoint", p.breakpoint}};
    } else if (a.kind == "etc") {
        inst = swb::forge_etc(a.T, a.K, a.m);
    } else if (a.kind == "eg-early") {
        inst = swb::forge_eg_early(a.T, a.K);
    } else if (a.kind == "eg-mid") {
        inst = swb::forge_eg_mid(a.T, a.K);
    } else if (a.kind == "restart-ucb" || a.kind == "restart-etc" || a.kind == "restart-eg") {
        swb::AdversaryKind k = a.kind == "restart-ucb" ? swb::AdversaryKind::Ucb
                               : a.kind == "restart-etc" ? swb::AdversaryKind::Etc
                                                         : swb::AdversaryKind::EgMid;
        inst = swb::forge_restart_composite(a.T, a.K, a.d, a.gamma, k, a.m);
    } else {
        throw std::invalid_argument("unknown forge kind '" + a.kind + "'");
    }

    swb::ValidationReport vr = swb::validate_instance(inst);
    if (!vr.ok) throw std::invalid_argument("forged instance invalid: " + vr.violations.front());
    swb::save_instance(inst, a.output);
    if (!sidecar.is_null()) write_text(sidecar_path(a.output), sidecar.dump(2) + "\n");

    std::cout << "forged " << a.kind << " instance: T=" << inst.T << " K=" << inst.K
              << " breakpoints=" << vr.breakpoints;
    if (!sidecar.is_null()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), " c=%ld delta=%.6f", sidecar["c"].get<long>(),
                      sidecar["delta"].get<double>());
        std::cout << buf;
    }
    std::cout << "\n";
    return 0;
}

int cmd_simulate(const Args& a) {
    swb::Instance inst = swb::load_instance(a.instance);
    swb::PolicySpec spec = swb::parse_policy(a.policy);
    swb::EpisodeOptions o;
    o.seed = a.seed;
    o.trace = !a.trace.empty();
    swb::Trajectory traj = swb::run_episode(inst, spec, o);
    if (o.trace) {
        std::ofstream os(a.trace);
        if (!os) throw std::runtime_error("cannot open '" + a.trace + "' for writing");
        swb::write_trace_csv(os, traj);
    }
    nlohmann::json j = {{"realized_regret", traj.realized_regret},
                        {"rounds", traj.T},
                        {"policy", swb::format_policy(spec)},
                        {"seed", a.seed}};
    emit(a.output, j);
    return 0;
}

int cmd_evaluate(const Args& a) {
    swb::Instance inst = swb::load_instance(a.instance);
    swb::PolicySpec spec = swb::parse_policy(a.policy);
    swb::RegretReport r = swb::monte_carlo_regret(inst, spec, a.reps, a.seed);
    emit(a.output, swb::to_json(r));
    return 0;
}

int cmd_certify(const Args& a) {
    auto id = swb::theorem_from_string(a.theorem);
    if (!id) throw std::invalid_argument("unknown theorem '" + a.theorem + "'");
    swb::CertifyParams p;
    p.T = a.T;
    p.K = a.K;
    p.m = a.m;
    p.eps = a.eps;
    p.d = a.d;
    p.gamma = a.gamma;
    swb::Certificate c = swb::certify(*id, p, a.reps, a.seed);
    emit(a.output, swb::to_json(c));
    if (!c.pass) {
        std::cerr << "certification failed: " << swb::theorem_name(*id) << "\n";
        return 3;
    }
    return 0;
}

int cmd_figure(const Args& a) {
    swb::Instance inst;
    swb::PolicySpec spec;
    swb::TieResolver tie = swb::TieResolver::uniform();
    switch (a.id) {
        case 1: {
            // UCB indices around the lock-in switch; the breakpoint tie is
            // forced to the suboptimal arm so the depicted event occurs.
            auto [i, p] = swb::forge_ucb(1000, 2);
            inst = std::move(i);
            spec = swb::PolicySpec::ucb_known();
            tie = swb::TieResolver::sequence(swb::forced_break_sequence(p.c, p.K, 2));
            break;
        }
        case 2:
            inst = swb::forge_etc(1000, 2, 10);
            spec = swb::PolicySpec::etc(10);
            break;
        case 3:
            inst = swb::forge_eg_mid(400, 2);
            spec = swb::PolicySpec::eps_greedy(0.1);
            break;
        default:
            throw std::invalid_argument("figure id must be 1, 2 or 3");
    }
    swb::EpisodeOptions o;
    o.seed = a.seed;
    o.trace = true;
    swb::Trajectory traj = swb::run_episode(inst, spec, o, std::move(tie));
    std::ofstream os(a.output);
    if (!os) throw std::runtime_error("cannot open '" + a.output + "' for writing");
    swb::write_trace_csv(os, traj);
    std::cout << "wrote figure " << a.id << " data to " << a.output << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"piecewise-stationary bandit lower-bound workbench"};
    app.require_subcommand(1);
    Args a;

    CLI::App* forge = app.add_subcommand("forge", "construct an adversarial instance");
    forge->add_option("--kind", a.kind,
                      "ucb | etc | eg-early | eg-mid | restart-ucb | restart-etc | restart-eg")
        ->required();
    forge->add_option("--T", a.T, "horizon");
    forge->add_option("--K", a.K, "arm count");
    forge->add_option("--m", a.m, "etc exploration pulls per arm");
    forge->add_option("--d", a.d, "restart count");
    forge->add_option("--gamma", a.gamma, "changes in the composite");
    forge->add_option("-o,--output", a.output, "instance file")->required();
    forge->add_option("--seed", a.seed, "unused for forging; accepted for uniformity");

    CLI::App* sim = app.add_subcommand("simulate", "run one episode");
    sim->add_option("--instance", a.instance, "instance file")->required();
    sim->add_option("--policy", a.policy, "policy designation")->required();
    sim->add_option("--seed", a.seed, "stream seed");
    sim->add_option("--trace", a.trace, "per-round trace CSV path");
    sim->add_option("-o,--output", a.output, "summary JSON path (stdout if omitted)");

    CLI::App* eval = app.add_subcommand("evaluate", "Monte-Carlo expected regret");
    eval->add_option("--instance", a.instance, "instance file")->required();
    eval->add_option("--policy", a.policy, "policy designation")->required();
    eval->add_option("--reps", a.reps, "replications");
    eval->add_option("--seed", a.seed, "stream seed");
    eval->add_option("-o,--output", a.output, "report JSON path (stdout if omitted)");

    CLI::App* cert = app.add_subcommand("certify", "check a lower bound on a forged instance");
    cert->add_option("--theorem", a.theorem,
                     "etc | eg | ucb | ucb-anytime | restart-stationary | restart-change | "
                     "restart-corollary")
        ->required();
    cert->add_option("--T", a.T, "horizon");
    cert->add_option("--K", a.K, "arm count");
    cert->add_option("--m", a.m, "etc exploration pulls per arm");
    cert->add_option("--eps", a.eps, "eps-greedy exploration probability");
    cert->add_option("--d", a.d, "restart count");
    cert->add_option("--gamma", a.gamma, "change count");
    cert->add_option("--reps", a.reps, "replications");
    cert->add_option("--seed", a.seed, "stream seed");
    cert->add_option("-o,--output", a.output, "certificate JSON path (stdout if omitted)");

    CLI::App* fig = app.add_subcommand("figure", "emit figure-reproduction CSV data");
    fig->add_option("--id", a.id, "1: UCB indices, 2: ETC commit, 3: eps-greedy means")
        ->required();
    fig->add_option("--seed", a.seed, "stream seed");
    fig->add_option("-o,--output", a.output, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (forge->parsed()) return cmd_forge(a);
        if (sim->parsed()) return cmd_simulate(a);
        if (eval->parsed()) return cmd_evaluate(a);
        if (cert->parsed()) return cmd_certify(a);
        if (fig->parsed()) return cmd_figure(a);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
