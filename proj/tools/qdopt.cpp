/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdopt/qdopt.hpp"

namespace {

using qdopt::json;

// Results go to --output or stdout; diagnostics go to stderr only.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        std::cout.flush();
    } else {
        qdopt::write_text_file(out_path, content);
    }
}

std::string g17(double v) { return qdopt::detail::fmt_g17(v); }

qdopt::Direction parse_direction(const std::string& s) {
    if (s == "min") return qdopt::Direction::Minimize;
    if (s == "max") return qdopt::Direction::Maximize;
    throw qdopt::InputError("direction must be 'min' or 'max'");
}

std::vector<double> parse_weights(const std::string& s) {
    std::vector<double> w;
    std::string cell;
    std::istringstream in(s);
    while (std::getline(in, cell, ',')) {
        cell = qdopt::detail::trim(cell);
        w.push_back(qdopt::detail::parse_double(cell, 0, "weight"));
    }
    return w;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string input;
    std::string algo = "bsb";
    std::string output;
    std::string trace_path;
    std::uint64_t seed = 0;
    int restarts = 32;
    long long steps = 2000;
    double dt = 0.1;
    double a0 = 1.0;
    double c0 = 0.0;
    bool c0_set = false;
    long long sweeps = 500;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    long long samples = 10000;
};

int run_solve(const SolveArgs& a) {
    qdopt::ParsedProblem prob = qdopt::load_problem(a.input);

    json params;
    params["algo"] = a.algo;
    params["seed"] = a.seed;

    // Non-brute algorithms search spin space; QUBO inputs are compiled first
    // and decoded back to bits afterwards.
    qdopt::IsingProblem ising;
    if (prob.is_ising) ising = prob.ising;
    else if (a.algo != "brute") ising = qdopt::qubo_to_ising(prob.qubo);

    qdopt::Solution sol;
    std::string trace_csv = "step,a_t,energy\n";

    if (a.algo == "bsb") {
        qdopt::BsbParams prm;
        prm.restarts = a.restarts;
        prm.steps = a.steps;
        prm.dt = a.dt;
        prm.a0 = a.a0;
        prm.seed = a.seed;
        if (a.c0_set) prm.c0 = a.c0;
        params["restarts"] = prm.restarts;
        params["steps"] = prm.steps;
        params["dt"] = prm.dt;
        params["a0"] = prm.a0;
        if (a.c0_set) params["c0"] = a.c0;
        else params["c0"] = "auto";
        qdopt::BsbTraceFn trace;
        if (!a.trace_path.empty())
            trace = [&](int, long long step, double a_t, double energy) {
                trace_csv += std::to_string(step) + "," + g17(a_t) + "," + g17(energy) + "\n";
            };
        sol = qdopt::bsb_solve(ising, prm, trace);
    } else if (a.algo == "sa") {
        if (!a.trace_path.empty())
            throw qdopt::InputError("--trace is only available with --algo bsb");
        qdopt::SaParams prm;
        prm.restarts = a.restarts;
        prm.sweeps = a.sweeps;
        prm.beta_initial = a.beta_initial;
        prm.beta_final = a.beta_final;
        prm.seed = a.seed;
        params["restarts"] = prm.restarts;
        params["sweeps"] = prm.sweeps;
        params["beta_initial"] = prm.beta_initial;
        params["beta_final"] = prm.beta_final;
        sol = qdopt::sa_solve(ising, prm);
    } else if (a.algo == "random") {
        if (!a.trace_path.empty())
            throw qdopt::InputError("--trace is only available with --algo bsb");
        params["samples"] = a.samples;
        sol = qdopt::random_search(ising, a.samples, a.seed);
    } else if (a.algo == "brute") {
        if (!a.trace_path.empty())
            throw qdopt::InputError("--trace is only available with --algo bsb");
        sol = prob.is_ising ? qdopt::brute_force_ground_state(prob.ising)
                            : qdopt::brute_force_ground_state(prob.qubo);
        sol.seed = a.seed;
    } else {
        throw qdopt::InputError("unknown --algo '" + a.algo + "'");
    }

    // Decode spin solutions of compiled QUBOs back into bit solutions.
    if (!prob.is_ising && a.algo != "brute") {
        qdopt::BinaryVector bits = qdopt::ising_extract(sol.config);
        sol.energy = qdopt::qubo_value(prob.qubo, bits);
        sol.config = bits;
    }

    if (!a.trace_path.empty()) qdopt::write_text_file(a.trace_path, trace_csv);

    json out = qdopt::solution_to_json(sol);
    out["params"] = params;
    emit(a.output, out.dump() + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitArgs {
    std::string input;
    std::string kind = "fm";
    std::string output;
    std::string direction = "max";
    std::uint64_t seed = 0;
    // fm
    std::size_t K = 8;
    double lr = 1e-3;
    long long epochs = 5000;
    double init_scale = 0.01;
    double val_fraction = 0.2;
    double weight_decay = 0.0;
    // rbm
    std::size_t hidden = 8;
    int cd_k = 1;
    double rbm_lr = 0.01;
    long long updates = 1000;
};

int run_fit(const FitArgs& a) {
    qdopt::PropertyDataset data = qdopt::load_dataset(a.input);

    if (a.kind == "fm") {
        if (data.target_cols() != 1)
            throw qdopt::InputError("fit fm: dataset must have a single target column");
        qdopt::Direction dir = parse_direction(a.direction);

        // Shift targets onto the surrogate's non-negative range so that
        // maximizing the internal value optimizes in the requested direction.
        double lo = data.target(0, 0), hi = data.target(0, 0);
        for (std::size_t r = 1; r < data.count(); ++r) {
            lo = std::min(lo, data.target(r, 0));
            hi = std::max(hi, data.target(r, 0));
        }
        qdopt::TargetTransform tf = qdopt::make_target_transform(lo, hi, dir);
        qdopt::PropertyDataset internal = data;
        for (double& t : internal.targets) t = tf.to_internal(t);

        qdopt::FmHyper h;
        h.lr = a.lr;
        h.epochs = a.epochs;
        h.init_scale = a.init_scale;
        h.val_fraction = a.val_fraction;
        h.weight_decay = a.weight_decay;
        h.seed = a.seed;
        qdopt::FactorModel m = qdopt::fm_fit(internal, a.K, h);
        m.transform = tf;

        json out = qdopt::fm_to_json(m);
        out["params"] = {{"kind", "fm"},
                         {"K", a.K},
                         {"lr", a.lr},
                         {"epochs", a.epochs},
                         {"init_scale", a.init_scale},
                         {"val_fraction", a.val_fraction},
                         {"weight_decay", a.weight_decay},
                         {"direction", a.direction},
                         {"seed", a.seed}};
        emit(a.output, out.dump() + "\n");
        return 0;
    }

    if (a.kind == "rbm") {
        // Train on the bit rows only; targets are ignored.
        if (a.cd_k < 1) throw qdopt::InputError("fit rbm: --cd-k must be >= 1");
        if (a.updates < 1) throw qdopt::InputError("fit rbm: --updates must be >= 1");
        if (a.hidden < 1) throw qdopt::InputError("fit rbm: --hidden must be >= 1");
        if (!(a.rbm_lr > 0.0)) throw qdopt::InputError("fit rbm: --lr must be > 0");

        std::vector<qdopt::BinaryVector> batch;
        batch.reserve(data.count());
        for (std::size_t r = 0; r < data.count(); ++r) batch.push_back(data.row_bits(r));
        if (batch.empty()) throw qdopt::InputError("fit rbm: empty dataset");

        qdopt::RbmModel m;
        m.n_v = data.n;
        m.n_h = a.hidden;
        m.W = qdopt::Matrix(m.n_v, m.n_h, 0.0);
        m.b_v.assign(m.n_v, 0.0);
        m.b_h.assign(m.n_h, 0.0);
        qdopt::Rng wrng = qdopt::Rng::derive(a.seed, 0);
        for (std::size_t i = 0; i < m.n_v; ++i)
            for (std::size_t j = 0; j < m.n_h; ++j) m.W(i, j) = wrng.uniform(-0.01, 0.01);

        qdopt::Rng chain = qdopt::Rng::derive(a.seed, 1);
        for (long long u = 0; u < a.updates; ++u)
            m = qdopt::cd_update(m, batch, a.cd_k, a.rbm_lr, chain);

        json out = qdopt::rbm_to_json(m);
        out["params"] = {{"kind", "rbm"},
                         {"hidden", a.hidden},
                         {"cd_k", a.cd_k},
                         {"lr", a.rbm_lr},
                         {"updates", a.updates},
                         {"seed", a.seed}};
        emit(a.output, out.dump() + "\n");
        return 0;
    }

    throw qdopt::InputError("unknown --kind '" + a.kind + "'");
}

// ---------------------------------------------------------------------------
// compile
// ---------------------------------------------------------------------------

int run_compile(const std::string& model_path, const std::string& direction,
                const std::string& output) {
    qdopt::FactorModel m = qdopt::fm_from_json(qdopt::read_text_file(model_path));
    qdopt::QuboProblem q = qdopt::fm_to_qubo(m, parse_direction(direction));
    emit(output, qdopt::qubo_to_text(q));
    return 0;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

struct OptimizeArgs {
    std::string input;
    std::string output;
    std::string direction = "max";
    std::string weights;
    std::string rbm_model;
    double keep_fraction = 0.5;
    std::size_t K = 8;
    std::size_t top_k = 10;
    std::uint64_t seed = 0;
    int restarts = 16;
    long long steps = 2000;
    double dt = 0.1;
    double a0 = 1.0;
    double c0 = 0.0;
    bool c0_set = false;
    double lr = 1e-3;
    long long epochs = 5000;
    double init_scale = 0.01;
    double val_fraction = 0.2;
    double weight_decay = 0.0;
};

int run_optimize(const OptimizeArgs& a) {
    qdopt::PropertyDataset data = qdopt::load_dataset(a.input);

    qdopt::PipelineConfig cfg;
    cfg.K = a.K;
    cfg.direction = parse_direction(a.direction);
    if (!a.weights.empty()) cfg.weights = parse_weights(a.weights);
    cfg.top_k = a.top_k;
    cfg.seed = a.seed;
    cfg.solver.restarts = a.restarts;
    cfg.solver.steps = a.steps;
    cfg.solver.dt = a.dt;
    cfg.solver.a0 = a.a0;
    if (a.c0_set) cfg.solver.c0 = a.c0;
    cfg.fit.lr = a.lr;
    cfg.fit.epochs = a.epochs;
    cfg.fit.init_scale = a.init_scale;
    cfg.fit.val_fraction = a.val_fraction;
    cfg.fit.weight_decay = a.weight_decay;
    if (!a.rbm_model.empty()) {
        qdopt::RbmFilter f;
        f.model = qdopt::rbm_from_json(qdopt::read_text_file(a.rbm_model));
        f.keep_fraction = a.keep_fraction;
        cfg.rbm_filter = std::move(f);
    }

    qdopt::RankedCandidates rc = qdopt::optimize_property(data, cfg);

    json params;
    params["direction"] = a.direction;
    params["weights"] = a.weights.empty() ? json("uniform") : json(parse_weights(a.weights));
    params["K"] = a.K;
    params["top_k"] = a.top_k;
    params["seed"] = a.seed;
    params["restarts"] = a.restarts;
    params["steps"] = a.steps;
    params["dt"] = a.dt;
    params["a0"] = a.a0;
    params["c0"] = a.c0_set ? json(a.c0) : json("auto");
    params["lr"] = a.lr;
    params["epochs"] = a.epochs;
    params["init_scale"] = a.init_scale;
    params["val_fraction"] = a.val_fraction;
    params["weight_decay"] = a.weight_decay;
    if (!a.rbm_model.empty()) {
        params["rbm_model"] = a.rbm_model;
        params["keep_fraction"] = a.keep_fraction;
    }

    std::string out;
    out += json{{"params", params}}.dump() + "\n";
    for (const qdopt::Candidate& c : rc.items) {
        json line;
        line["bits"] = c.bits;
        line["predicted"] = c.predicted;
        line["energy"] = c.energy;
        line["restart"] = c.restart;
        out += line.dump() + "\n";
    }
    emit(a.output, out);
    return 0;
}

// ---------------------------------------------------------------------------
// sample relax | sample rbm
// ---------------------------------------------------------------------------

struct RelaxArgs {
    std::string mode = "icdf";
    long long count = 1000;
    double beta = 8.0;
    std::uint64_t seed = 0;
    std::string output;
};

int run_sample_relax(const RelaxArgs& a) {
    if (a.count < 1) throw qdopt::InputError("sample relax: --count must be >= 1");
    qdopt::RelaxationParams prm;
    prm.beta = a.beta;
    qdopt::Rng rng = qdopt::Rng::derive(a.seed, 0);
    std::string out;
    if (a.mode == "icdf") {
        out += "u,zeta\n";
        for (long long i = 0; i < a.count; ++i) {
            double u = rng.uniform();
            out += g17(u) + "," + g17(qdopt::inverse_cdf_sample(u, 1, prm)) + "\n";
        }
    } else if (a.mode == "reparam") {
        out += "q,rho,zeta\n";
        for (long long i = 0; i < a.count; ++i) {
            double q = rng.uniform();
            double rho = rng.uniform();
            out += g17(q) + "," + g17(rho) + "," +
                   g17(qdopt::reparam_sample(q, rho, prm)) + "\n";
        }
    } else {
        throw qdopt::InputError("sample relax: --mode must be 'icdf' or 'reparam'");
    }
    emit(a.output, out);
    return 0;
}

struct RbmSampleArgs {
    std::string model;
    long long count = 100;
    long long chains = 1;
    long long burn_in = 1000;
    long long thin = 1;
    std::uint64_t seed = 0;
    std::string output;
};

int run_sample_rbm(const RbmSampleArgs& a) {
    qdopt::RbmModel m = qdopt::rbm_from_json(qdopt::read_text_file(a.model));
    std::vector<qdopt::BinaryVector> rows = qdopt::rbm_sample(
        m, static_cast<int>(a.chains), a.burn_in, a.thin, a.count, a.seed);
    std::string out;
    for (const qdopt::BinaryVector& v : rows) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += v[i] ? '1' : '0';
            out += (i + 1 < v.size()) ? "," : "\n";
        }
    }
    emit(a.output, out);
    return 0;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::size_t n = 0;
    double density = 1.0;
    std::string coupling = "uniform";
    std::string direction = "min";
    bool cycle = false;
    std::uint64_t seed = 0;
    std::string output;
};

int run_gen(const GenArgs& a) {
    if (a.n < 1) throw qdopt::InputError("gen: --n must be >= 1");
    if (!(a.density > 0.0) || a.density > 1.0)
        throw qdopt::InputError("gen: --density must be in (0, 1]");
    if (a.coupling != "uniform" && a.coupling != "pm1")
        throw qdopt::InputError("gen: --coupling must be 'uniform' or 'pm1'");
    qdopt::Rng rng = qdopt::Rng::derive(a.seed, 0);

    auto draw = [&]() {
        return a.coupling == "pm1" ? (rng.bit() ? 1.0 : -1.0) : rng.uniform(-1.0, 1.0);
    };
    auto included = [&]() { return a.density >= 1.0 || rng.uniform() < a.density; };

    std::string head = "# gen kind=" + a.kind + " n=" + std::to_string(a.n) +
                       " density=" + g17(a.density) + " seed=" + std::to_string(a.seed);

    if (a.kind == "ising") {
        qdopt::Matrix J(a.n, a.n, 0.0);
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = i + 1; j < a.n; ++j)
                if (included()) J(i, j) = J(j, i) = draw();
        std::string body = qdopt::ising_to_text(qdopt::make_ising(a.n, J));
        emit(a.output, head + " coupling=" + a.coupling + "\n" + body);
        return 0;
    }

    if (a.kind == "qubo") {
        qdopt::Matrix Q(a.n, a.n, 0.0);
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = i; j < a.n; ++j)
                if (included()) Q(i, j) = Q(j, i) = draw();
        qdopt::QuboProblem q =
            qdopt::make_qubo(a.n, std::move(Q), parse_direction(a.direction));
        emit(a.output, head + " coupling=" + a.coupling + "\n" + qdopt::qubo_to_text(q));
        return 0;
    }

    if (a.kind == "maxcut") {
        std::vector<qdopt::Edge> edges;
        if (a.cycle) {
            if (a.n == 2) edges.push_back({0, 1, 1.0});
            else if (a.n >= 3)
                for (std::size_t i = 0; i < a.n; ++i) edges.push_back({i, (i + 1) % a.n, 1.0});
        } else {
            for (std::size_t i = 0; i < a.n; ++i)
                for (std::size_t j = i + 1; j < a.n; ++j)
                    if (included()) edges.push_back({i, j, 1.0});
        }
        qdopt::IsingProblem p = qdopt::maxcut_to_ising(edges, a.n);
        std::string body = qdopt::ising_to_text(p);
        // cut(s) = (W_total - E(s)) / 2 for this encoding.
        std::string note = "# maxcut edges=" + std::to_string(edges.size()) +
                           " W_total=" + g17(qdopt::total_weight(edges)) +
                           (a.cycle ? " cycle=1" : "") + "\n";
        emit(a.output, head + "\n" + note + body);
        return 0;
    }

    throw qdopt::InputError("gen: unknown --kind '" + a.kind + "'");
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

// Defaults mirror the shipped large-instance comparison: dt tuned for dense
// +-1 instances, SA betas the small-instance defaults rescaled by the
// coupling magnitude (local fields scale like sqrt(n)).
struct BenchArgs {
    std::size_t n = 2000;
    long long steps = 10000;
    int seeds = 5;
    long long sa_sweeps = 0;  // 0: match steps
    double dt = 1.0;
    double sa_beta_initial = 0.005;
    double sa_beta_final = 0.5;
    std::uint64_t seed = 0;
    std::string output;
};

int run_bench(const BenchArgs& a) {
    if (a.seeds < 1) throw qdopt::InputError("bench: --seeds must be >= 1");
    long long sweeps = a.sa_sweeps > 0 ? a.sa_sweeps : a.steps;

    std::string out = "seed,algo,energy,cut\n";
    double mean_bsb_cut = 0.0, mean_sa_cut = 0.0;
    double mean_bsb_e = 0.0, mean_sa_e = 0.0;

    for (int s = 0; s < a.seeds; ++s) {
        std::uint64_t inst_seed = a.seed + static_cast<std::uint64_t>(s);
        // All-to-all +-1 couplings; the equivalent cut weights are w = 2 J.
        qdopt::Rng rng = qdopt::Rng::derive(inst_seed, 0);
        qdopt::Matrix J(a.n, a.n, 0.0);
        double w_total = 0.0;
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = i + 1; j < a.n; ++j) {
                double v = rng.bit() ? 1.0 : -1.0;
                J(i, j) = J(j, i) = v;
                w_total += 2.0 * v;
            }
        qdopt::IsingProblem p = qdopt::make_ising(a.n, std::move(J));

        qdopt::BsbParams bprm;
        bprm.restarts = 1;
        bprm.steps = a.steps;
        bprm.dt = a.dt;
        bprm.seed = inst_seed;
        auto t0 = std::chrono::steady_clock::now();
        qdopt::Solution bs = qdopt::bsb_solve(p, bprm);
        auto t1 = std::chrono::steady_clock::now();

        qdopt::SaParams sprm;
        sprm.restarts = 1;
        sprm.sweeps = sweeps;
        sprm.beta_initial = a.sa_beta_initial;
        sprm.beta_final = a.sa_beta_final;
        sprm.seed = inst_seed;
        auto t2 = std::chrono::steady_clock::now();
        qdopt::Solution ss = qdopt::sa_solve(p, sprm);
        auto t3 = std::chrono::steady_clock::now();

        double bcut = (w_total - bs.energy) / 2.0;
        double scut = (w_total - ss.energy) / 2.0;
        mean_bsb_cut += bcut / a.seeds;
        mean_sa_cut += scut / a.seeds;
        mean_bsb_e += bs.energy / a.seeds;
        mean_sa_e += ss.energy / a.seeds;

        out += std::to_string(inst_seed) + ",bsb," + g17(bs.energy) + "," + g17(bcut) + "\n";
        out += std::to_string(inst_seed) + ",sa," + g17(ss.energy) + "," + g17(scut) + "\n";

        std::cerr << "seed " << inst_seed << ": bsb "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " ms, sa "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t3 - t2).count()
                  << " ms\n";
    }
    out += "mean,bsb," + g17(mean_bsb_e) + "," + g17(mean_bsb_cut) + "\n";
    out += "mean,sa," + g17(mean_sa_e) + "," + g17(mean_sa_cut) + "\n";
    emit(a.output, out);
    return 0;
}

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
    CLI::App app{"quantum-inspired discrete optimization toolkit"};
    app.require_subcommand(1);

    SolveArgs sv;
    CLI::App* solve = app.add_subcommand("solve", "solve a problem file");
    solve->add_option("input", sv.input, "problem file (ising/qubo text)")->required();
    solve->add_option("--algo", sv.algo, "bsb|sa|random|brute")->capture_default_str();
    solve->add_option("--seed", sv.seed, "rng seed")->capture_default_str();
    solve->add_option("--restarts", sv.restarts, "independent restarts")->capture_default_str();
    solve->add_option("--steps", sv.steps, "bsb integration steps")->capture_default_str();
    solve->add_option("--dt", sv.dt, "bsb time step")->capture_default_str();
    solve->add_option("--a0", sv.a0, "bsb bifurcation target")->capture_default_str();
    solve->add_option("--c0", sv.c0, "bsb coupling strength (default: auto)");
    solve->add_option("--sweeps", sv.sweeps, "sa sweeps")->capture_default_str();
    solve->add_option("--beta-initial", sv.beta_initial, "sa initial inverse temperature")
        ->capture_default_str();
    solve->add_option("--beta-final", sv.beta_final, "sa final inverse temperature")
        ->capture_default_str();
    solve->add_option("--samples", sv.samples, "random-search samples")->capture_default_str();
    solve->add_option("--trace", sv.trace_path, "write bsb trace CSV to this file");
    solve->add_option("--output", sv.output, "write result JSON here instead of stdout");

    FitArgs ft;
    CLI::App* fit = app.add_subcommand("fit", "fit a surrogate or rbm on a dataset CSV");
    fit->add_option("input", ft.input, "dataset CSV")->required();
    fit->add_option("--kind", ft.kind, "fm|rbm")->capture_default_str();
    fit->add_option("--seed", ft.seed, "rng seed")->capture_default_str();
    fit->add_option("--k", ft.K, "fm rank")->capture_default_str();
    fit->add_option("--lr", ft.lr, "fm learning rate")->capture_default_str();
    fit->add_option("--epochs", ft.epochs, "fm epochs")->capture_default_str();
    fit->add_option("--init-scale", ft.init_scale, "fm init scale")->capture_default_str();
    fit->add_option("--val-fraction", ft.val_fraction, "fm validation fraction")
        ->capture_default_str();
    fit->add_option("--weight-decay", ft.weight_decay, "fm weight decay")
        ->capture_default_str();
    fit->add_option("--direction", ft.direction, "min|max target sense")->capture_default_str();
    fit->add_option("--hidden", ft.hidden, "rbm hidden units")->capture_default_str();
    fit->add_option("--cd-k", ft.cd_k, "rbm contrastive divergence steps")
        ->capture_default_str();
    fit->add_option("--rbm-lr", ft.rbm_lr, "rbm learning rate")->capture_default_str();
    fit->add_option("--updates", ft.updates, "rbm full-batch updates")->capture_default_str();
    fit->add_option("--output", ft.output, "write model JSON here instead of stdout");

    std::string cp_model, cp_dir = "max", cp_out;
    CLI::App* compile = app.add_subcommand("compile", "compile a fm model to a qubo file");
    compile->add_option("model", cp_model, "fm model JSON")->required();
    compile->add_option("--direction", cp_dir, "min|max")->capture_default_str();
    compile->add_option("--output", cp_out, "write problem text here instead of stdout");

    OptimizeArgs op;
    CLI::App* optimize =
        app.add_subcommand("optimize", "end-to-end: fit, compile, solve, rank");
    optimize->add_option("input", op.input, "dataset CSV")->required();
    optimize->add_option("--direction", op.direction, "min|max")->capture_default_str();
    optimize->add_option("--weights", op.weights, "comma-separated scalarization weights");
    optimize->add_option("--k", op.K, "surrogate rank")->capture_default_str();
    optimize->add_option("--top-k", op.top_k, "candidates to keep")->capture_default_str();
    optimize->add_option("--seed", op.seed, "rng seed")->capture_default_str();
    optimize->add_option("--restarts", op.restarts, "solver restarts")->capture_default_str();
    optimize->add_option("--steps", op.steps, "solver steps")->capture_default_str();
    optimize->add_option("--dt", op.dt, "solver time step")->capture_default_str();
    optimize->add_option("--a0", op.a0, "solver bifurcation target")->capture_default_str();
    optimize->add_option("--c0", op.c0, "solver coupling strength (default: auto)");
    optimize->add_option("--lr", op.lr, "fit learning rate")->capture_default_str();
    optimize->add_option("--epochs", op.epochs, "fit epochs")->capture_default_str();
    optimize->add_option("--init-scale", op.init_scale, "fit init scale")
        ->capture_default_str();
    optimize->add_option("--val-fraction", op.val_fraction, "fit validation fraction")
        ->capture_default_str();
    optimize->add_option("--weight-decay", op.weight_decay, "fit weight decay")
        ->capture_default_str();
    optimize->add_option("--rbm-model", op.rbm_model, "rbm JSON for plausibility filtering");
    optimize->add_option("--keep-fraction", op.keep_fraction, "fraction kept by the filter")
        ->capture_default_str();
    optimize->add_option("--output", op.output, "write JSON lines here instead of stdout");

    CLI::App* sample = app.add_subcommand("sample", "draw relaxation or rbm samples");
    sample->require_subcommand(1);
    RelaxArgs rx;
    CLI::App* relax = sample->add_subcommand("relax", "spike-and-exponential samples");
    relax->add_option("--mode", rx.mode, "icdf|reparam")->capture_default_str();
    relax->add_option("--count", rx.count, "samples to draw")->capture_default_str();
    relax->add_option("--beta", rx.beta, "relaxation sharpness")->capture_default_str();
    relax->add_option("--seed", rx.seed, "rng seed")->capture_default_str();
    relax->add_option("--output", rx.output, "write CSV here instead of stdout");
    RbmSampleArgs rs;
    CLI::App* srbm = sample->add_subcommand("rbm", "gibbs-chain visible samples");
    srbm->add_option("model", rs.model, "rbm model JSON")->required();
    srbm->add_option("--count", rs.count, "samples to draw")->capture_default_str();
    srbm->add_option("--chains", rs.chains, "independent chains")->capture_default_str();
    srbm->add_option("--burn-in", rs.burn_in, "discarded steps per chain")
        ->capture_default_str();
    srbm->add_option("--thin", rs.thin, "keep every thin-th state")->capture_default_str();
    srbm->add_option("--seed", rs.seed, "rng seed")->capture_default_str();
    srbm->add_option("--output", rs.output, "write CSV here instead of stdout");

    GenArgs gn;
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance file");
    gen->add_option("--kind", gn.kind, "ising|qubo|maxcut")->required();
    gen->add_option("--n", gn.n, "problem size")->required();
    gen->add_option("--density", gn.density, "pair inclusion probability")
        ->capture_default_str();
    gen->add_option("--coupling", gn.coupling, "uniform|pm1")->capture_default_str();
    gen->add_option("--direction", gn.direction, "qubo sense: min|max")->capture_default_str();
    gen->add_flag("--cycle", gn.cycle, "maxcut: cycle graph instead of random");
    gen->add_option("--seed", gn.seed, "rng seed")->capture_default_str();
    gen->add_option("--output", gn.output, "write instance here instead of stdout");

    BenchArgs bn;
    CLI::App* bench = app.add_subcommand("bench", "large-instance solver comparison");
    bench->add_option("--n", bn.n, "spins")->capture_default_str();
    bench->add_option("--steps", bn.steps, "bsb steps")->capture_default_str();
    bench->add_option("--seeds", bn.seeds, "instances to run")->capture_default_str();
    bench->add_option("--sa-sweeps", bn.sa_sweeps, "sa sweeps (default: match --steps)");
    bench->add_option("--dt", bn.dt, "bsb time step")->capture_default_str();
    bench->add_option("--sa-beta-initial", bn.sa_beta_initial, "sa initial inverse temp")
        ->capture_default_str();
    bench->add_option("--sa-beta-final", bn.sa_beta_final, "sa final inverse temp")
        ->capture_default_str();
    bench->add_option("--seed", bn.seed, "base seed")->capture_default_str();
    bench->add_option("--output", bn.output, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    sv.c0_set = solve->count("--c0") > 0;
    op.c0_set = optimize->count("--c0") > 0;

    if (*solve) return run_solve(sv);
    if (*fit) return run_fit(ft);
    if (*compile) return run_compile(cp_model, cp_dir, cp_out);
    if (*optimize) return run_optimize(op);
    if (*relax) return run_sample_relax(rx);
    if (*srbm) return run_sample_rbm(rs);
    if (*gen) return run_gen(gn);
    if (*bench) return run_bench(bn);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const qdopt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qdopt::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qdopt::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qdopt::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
