// Random damped pole-residue sets shared by memory tests and acceptance.

#pragma once

#include <random>

#include "pseudomode/memory.hpp"

namespace random_sets {

// Poles xi - i lambda with xi in [-1, 1], lambda in [0.05, 0.5]; residues of
// magnitude [0.005, 0.1] with phase within +-pi/4. Poles are kept 0.01 apart.
inline pseudomode::PoleResidueSet damped(std::size_t count, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> xi(-1.0, 1.0), lambda(0.05, 0.5), mag(0.005, 0.1),
        phase(-0.785, 0.785);
    pseudomode::PoleResidueSet prs;
    while (prs.size() < count) {
        const pseudomode::Complex z{xi(rng), -lambda(rng)};
        bool clash = false;
        for (const auto& t : prs.terms) clash = clash || std::abs(t.pole - z) < 0.01;
        if (clash) continue;
        prs.terms.push_back({z, std::polar(mag(rng), phase(rng))});
    }
    return prs;
}

} // namespace random_sets
