// Minimal solver tour: build a frustrated ring, solve it three ways, and
// compare against the exact ground state.
#include <iostream>

#include "qdopt/qdopt.hpp"

int main() {
    using namespace qdopt;

    // A 12-spin ring with alternating couplings plus a few random chords.
    const std::size_t n = 12;
    Matrix J(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        double v = (i % 2 == 0) ? 1.0 : -0.7;
        J(i, j) = J(j, i) = v;
    }
    Rng rng = Rng::derive(7, 0);
    for (int chord = 0; chord < 6; ++chord) {
        std::size_t i = static_cast<std::size_t>(rng.below(n));
        std::size_t j = static_cast<std::size_t>(rng.below(n));
        if (i == j || J(i, j) != 0.0) continue;
        J(i, j) = J(j, i) = rng.uniform(-1.0, 1.0);
    }
    IsingProblem p = make_ising(std::move(J));

    Solution exact = brute_force_ground_state(p);
    std::cout << "exact ground state energy: " << exact.energy << "\n";

    BsbParams bprm;
    bprm.restarts = 8;
    bprm.steps = 1000;
    Solution b = bsb_solve(p, bprm);
    std::cout << "bsb  found " << b.energy << "  (restart " << b.restart_index
              << ", step " << b.best_step << ")\n";

    SaParams sprm;
    sprm.restarts = 8;
    Solution s = sa_solve(p, sprm);
    std::cout << "sa   found " << s.energy << "\n";

    Solution r = random_search(p, 20000, 0);
    std::cout << "rand found " << r.energy << "\n";

    std::cout << (b.energy <= exact.energy + 1e-9 ? "bsb matched the optimum\n"
                                                  : "bsb missed the optimum\n");
    return 0;
}
