// Compares Morse levels against the finite-difference oracle as the grid is refined.

#include <cmath>
#include <cstdio>

#include "specbound/specbound.hpp"

int main() {
    using namespace specbound;
    const UnitsConfig units{};
    const GeneralizedMorse morse{100.0, 100.0, 1.0};
    const auto states = spectrum(morse, 0, units, 20);
    auto grid = default_grid(morse, units);
    std::printf("%8s %6s %14s %14s\n", "points", "levels", "max rel diff", "richardson");
    for (int points : {500, 1000, 2000, 4000}) {
        grid.n_points = points;
        const auto oracle = fd_eigenvalues(morse, 0, units, grid, static_cast<int>(states.size()));
        double worst = 0.0;
        for (std::size_t i = 0; i < oracle.eigenvalues.size() && i < states.size(); ++i) {
            worst = std::fmax(worst, std::abs(oracle.eigenvalues[i] - states[i].energy) / std::abs(states[i].energy));
        }
        std::printf("%8d %6zu %14.3e %14.3e\n", points, oracle.eigenvalues.size(), worst, oracle.max_richardson_shift);
    }
    return 0;
}
