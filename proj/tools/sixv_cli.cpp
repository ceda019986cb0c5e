// Command-line front end: exact summaries, Glauber simulation with JSONL
// trajectory output, CRW distributions, walk generating function values,
// fault-line classification of a configuration, and phase classification.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sixv/crw.hpp>
#include <sixv/exact.hpp>
#include <sixv/ferro.hpp>
#include <sixv/glauber.hpp>
#include <sixv/nbwalk.hpp>
#include <sixv/serialize.hpp>

using json = nlohmann::json;
using namespace sixv;

namespace {

struct BoundaryOpts {
    std::string kind = "free";
    int ell = 0, d = 1;

    // n is the terminal coordinate for `paths`, the lattice side otherwise
    int lattice_side(int n) const { return kind == "paths" ? n + 1 : n; }

    BoundaryCondition make(int n) const {
        if (kind == "free") return BoundaryCondition::free_boundary();
        if (kind == "domain-wall") return BoundaryCondition::domain_wall(n);
        if (kind == "paths")
            return independent_paths_boundary({n, ell, d});
        throw CLI::ValidationError("boundary", "unknown boundary: " + kind);
    }
};

void add_boundary_opts(CLI::App* cmd, BoundaryOpts& bo) {
    cmd->add_option("--boundary", bo.kind, "free | domain-wall | paths")
        ->check(CLI::IsMember({"free", "domain-wall", "paths"}));
    cmd->add_option("--ell", bo.ell, "satellite paths per side (paths)");
    cmd->add_option("--d", bo.d, "satellite spacing (paths)");
}

struct WeightOpts {
    double a = 1, b = 1, c = 1;
    double lambda = -1, mu = -1;

    Weights make() const {
        if (lambda > 0 || mu > 0) {
            if (!(lambda > 0 && mu > 0))
                throw CLI::ValidationError("weights",
                                           "set both --lambda and --mu");
            return Weights::from_lambda_mu(lambda, mu);
        }
        return Weights(a, b, c);
    }
};

void add_weight_opts(CLI::App* cmd, WeightOpts& wo) {
    cmd->add_option("--a", wo.a, "vertex weight a");
    cmd->add_option("--b", wo.b, "vertex weight b");
    cmd->add_option("--c", wo.c, "vertex weight c");
    cmd->add_option("--lambda", wo.lambda, "a/c (sets c=1)");
    cmd->add_option("--mu", wo.mu, "b/c (sets c=1)");
}

json config_json_for(const Configuration& c, const BoundaryCondition& bc) {
    return config_to_json(c, bc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex model toolkit"};
    app.require_subcommand(1);

    // --- exact ------------------------------------------------------------
    auto* cmd_exact = app.add_subcommand(
        "exact", "enumerate a small lattice and summarize it exactly");
    int ex_n = 2;
    std::size_t ex_cap = 1'000'000;
    BoundaryOpts ex_bo;
    WeightOpts ex_wo;
    bool ex_mix = false;
    cmd_exact->add_option("--n", ex_n, "lattice size")->required();
    cmd_exact->add_option("--cap", ex_cap, "state cap");
    cmd_exact->add_flag("--mixing", ex_mix,
                        "also compute gap and tau(1/4) of the lazy chain");
    add_boundary_opts(cmd_exact, ex_bo);
    add_weight_opts(cmd_exact, ex_wo);

    // --- simulate ----------------------------------------------------------
    auto* cmd_sim = app.add_subcommand(
        "simulate", "run Glauber dynamics, JSONL trajectory on stdout");
    int sim_n = 8;
    std::uint64_t sim_steps = 100000, sim_every = 1000, sim_seed = 0,
                  sim_stream = 0;
    std::string sim_start = "red", sim_obs = "kept_fraction", sim_moves = "all";
    BoundaryOpts sim_bo;
    WeightOpts sim_wo;
    cmd_sim->add_option("--n", sim_n, "lattice size")->required();
    cmd_sim->add_option("--steps", sim_steps, "number of steps");
    cmd_sim->add_option("--record-every", sim_every, "recording period");
    cmd_sim->add_option("--seed", sim_seed, "RNG seed")->required();
    cmd_sim->add_option("--stream", sim_stream, "RNG stream id");
    cmd_sim->add_option("--start", sim_start, "red | green | staircase");
    cmd_sim->add_option("--observables", sim_obs, "comma-separated names");
    cmd_sim->add_option("--moves", sim_moves, "cells | all")
        ->check(CLI::IsMember({"cells", "all"}));
    add_boundary_opts(cmd_sim, sim_bo);
    add_weight_opts(cmd_sim, sim_wo);

    // --- crw ----------------------------------------------------------------
    auto* cmd_crw = app.add_subcommand(
        "crw", "correlated random walk endpoint distribution");
    long long crw_n = 10;
    double crw_p = -1, crw_mu = -1;
    long long crw_samples = 0;
    std::uint64_t crw_seed = 1;
    cmd_crw->add_option("--n", crw_n, "number of step pairs")->required();
    cmd_crw->add_option("--p", crw_p, "turn... continuation probability p");
    cmd_crw->add_option("--mu", crw_mu, "straight weight mu (p = mu/(1+mu))");
    cmd_crw->add_option("--samples", crw_samples,
                        "if > 0, also sample empirically");
    cmd_crw->add_option("--seed", crw_seed, "RNG seed for sampling");

    // --- nbwalk --------------------------------------------------------------
    auto* cmd_nb = app.add_subcommand(
        "nbwalk", "non-backtracking walk generating function F_n(x,y)");
    int nb_n = 5;
    double nb_x = 1, nb_y = 1;
    cmd_nb->add_option("--n", nb_n, "walk length")->required();
    cmd_nb->add_option("--x", nb_x, "weight x");
    cmd_nb->add_option("--y", nb_y, "weight y");

    // --- faultline -------------------------------------------------------------
    auto* cmd_fl = app.add_subcommand(
        "faultline", "classify a configuration (JSON file or stdin)");
    std::string fl_in = "-";
    cmd_fl->add_option("--in", fl_in, "configuration JSON path ('-' = stdin)");

    // --- ferro --------------------------------------------------------------
    auto* cmd_fe = app.add_subcommand(
        "ferro", "emit the independent-paths boundary and start state");
    int fe_n = 16, fe_ell = -1, fe_d = -1;
    cmd_fe->add_option("--n", fe_n, "terminal coordinate")->required();
    cmd_fe->add_option("--ell", fe_ell, "satellites per side (default n^(1/8))");
    cmd_fe->add_option("--d", fe_d, "spacing (default 32 n^(3/4))");

    // --- phase --------------------------------------------------------------
    auto* cmd_ph = app.add_subcommand("phase", "classify weights by phase");
    WeightOpts ph_wo;
    add_weight_opts(cmd_ph, ph_wo);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_exact) {
            auto bc = ex_bo.make(ex_n);
            int side = ex_bo.lattice_side(ex_n);
            auto spc = enumerate_states(side, bc, ex_cap);
            Weights w = ex_wo.make();
            json out{{"n", side},
                     {"boundary", boundary_to_json(bc)},
                     {"num_states", spc.size()},
                     {"transfer_count", count_states_transfer(side, bc)},
                     {"partition_function",
                      partition_function<double>(spc, w.a, w.b, w.c)},
                     {"phase", phase_name(classify_phase(w))}};
            if (ex_mix) {
                MoveSet ms = bc.is_free() ? MoveSet::AllFaces
                                          : MoveSet::CellsOnly;
                auto pi = stationary<double>(spc, w.a, w.b, w.c);
                auto tr = transition_matrix<double>(spc, w.a, w.b, w.c, ms, 0.5);
                auto P = to_dense(tr);
                out["spectral_gap"] = spectral_gap(P, pi);
                out["mixing_time"] = mixing_time(P, pi);
            }
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_sim) {
            auto bc = sim_bo.make(sim_n);
            int side = sim_bo.lattice_side(sim_n);
            Weights w = sim_wo.make();
            Configuration start(side);
            if (sim_start == "red")
                start = ground_state_red(side);
            else if (sim_start == "green")
                start = ground_state_green(side);
            else if (sim_start == "staircase" && sim_bo.kind == "paths")
                start = canonical_start({sim_n, sim_bo.ell, sim_bo.d});
            else
                throw CLI::ValidationError("start",
                                           "bad --start for this boundary");
            if (!bc.satisfied_by(start))
                throw CLI::ValidationError(
                    "start", "start state violates the boundary condition");
            MoveSet ms = sim_moves == "all" ? MoveSet::AllFaces
                                            : MoveSet::CellsOnly;
            GlauberChain chain(start, w, ms, sim_seed, sim_stream);
            std::vector<std::string> obs;
            for (auto&& part : CLI::detail::split(sim_obs, ','))
                obs.push_back(part);
            auto traj = run_chain(chain, sim_steps, sim_every, obs);
            for (const auto& r : traj.records) {
                json line{{"step", r.step}};
                for (std::size_t k = 0; k < traj.names.size(); ++k)
                    line[traj.names[k]] = r.values[k];
                std::cout << line.dump() << "\n";
            }
            std::cerr << "accepted " << chain.accepted << "/"
                      << chain.steps_done << " moves\n";
        } else if (*cmd_crw) {
            if ((crw_p < 0) == (crw_mu < 0))
                throw CLI::ValidationError("crw", "set exactly one of --p/--mu");
            CrwSpec spec = crw_p >= 0 ? CrwSpec::from_p(crw_n, crw_p)
                                      : CrwSpec::from_mu(crw_n, crw_mu);
            json out{{"n", spec.n}, {"p", spec.p}, {"mu", spec.mu}};
            json pdf = json::array();
            for (long long m = 0; m <= spec.n; ++m)
                pdf.push_back(pdf_exact(spec, m));
            out["pdf"] = pdf;  // P(S_2n = 2m), m = 0..n
            out["unimodal"] = is_unimodal(spec).unimodal;
            if (crw_samples > 0)
                out["empirical"] =
                    empirical_distribution(spec, crw_samples, crw_seed);
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_nb) {
            json out{{"n", nb_n},
                     {"x", nb_x},
                     {"y", nb_y},
                     {"F", F_recurrence(nb_n, nb_x, nb_y)},
                     {"upper_bound", F_upper_bound(nb_n, nb_x, nb_y)},
                     {"lambda2", lambda2(nb_x, nb_y)}};
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_fl) {
            json j;
            if (fl_in == "-") {
                std::cin >> j;
            } else {
                std::ifstream f(fl_in);
                if (!f) throw std::runtime_error("cannot open " + fl_in);
                f >> j;
            }
            auto sc = config_from_json(j);
            auto rep = classify(sc.config);
            json out{{"class", fault_class_name(rep.cls)},
                     {"red_cross", rep.red_cross},
                     {"green_cross", rep.green_cross}};
            if (rep.fault_line) {
                out["fault_line"] = rep.fault_line->faces;
                out["walk"] = walk_string(*rep.fault_line, sc.config.n);
            }
            if (rep.almost_fault_line) {
                out["almost_fault_line"] = rep.almost_fault_line->faces;
                out["wildcard_index"] = rep.almost_fault_line->wildcard_index;
            }
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_fe) {
            IndependentPathsSpec sp{fe_n,
                                    fe_ell >= 0
                                        ? fe_ell
                                        : IndependentPathsSpec::default_ell(fe_n),
                                    fe_d >= 0
                                        ? fe_d
                                        : IndependentPathsSpec::default_d(fe_n)};
            // the published defaults target large n; shrink d if needed
            while (sp.ell > 0 && sp.d > 1 && sp.ell * sp.d >= sp.n)
                sp.d = sp.d / 2;
            auto bc = independent_paths_boundary(sp);
            json out{{"n", sp.n},
                     {"ell", sp.ell},
                     {"d", sp.d},
                     {"lattice_side", sp.side()},
                     {"start", config_json_for(canonical_start(sp), bc)}};
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_ph) {
            Weights w = ph_wo.make();
            json out{{"a", w.a},
                     {"b", w.b},
                     {"c", w.c},
                     {"delta", delta(w)},
                     {"phase", phase_name(classify_phase(w))}};
            std::cout << out.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
