// End-to-end demo: learn a factorized surrogate from labeled bit vectors,
// compile it to a spin problem, solve with the bifurcation solver, and rank
// the candidates it surfaces against the hidden oracle.
#include <iostream>

#include "qdopt/qdopt.hpp"

int main() {
    using namespace qdopt;

    // Hidden black box the pipeline never sees directly.
    SyntheticOracle oracle(OracleKind::Quadratic, 10, 21);
    PropertyDataset data = oracle_dataset(oracle, 300, 99);
    std::cout << "dataset: " << data.count() << " rows over " << data.n
              << " bits\n";

    PipelineConfig cfg;
    cfg.K = 12;
    cfg.direction = Direction::Maximize;
    cfg.top_k = 5;
    cfg.seed = 1;
    cfg.fit.lr = 1e-3;
    cfg.fit.epochs = 4000;
    cfg.fit.init_scale = 0.1;
    cfg.solver.restarts = 16;
    cfg.solver.steps = 1000;

    RankedCandidates rc = optimize_property(data, cfg);

    Solution best = brute_force_ground_state(oracle.as_qubo(Direction::Maximize));
    std::cout << "true optimum value: " << best.energy << "\n";

    std::cout << "rank  predicted   true\n";
    for (std::size_t i = 0; i < rc.items.size(); ++i) {
        const Candidate& c = rc.items[i];
        std::cout << i << "     " << c.predicted << "   " << oracle(c.bits)
                  << "\n";
    }
    return 0;
}
