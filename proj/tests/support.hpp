// Glue between oracle parameter records and library networks.

#pragma once

#include <vector>

#include "oracles.hpp"
#include "pseudomode/model.hpp"

namespace testing_support {

inline pseudomode::CouplingKind to_kind(oracle::Kind k)
{
    switch (k) {
    case oracle::Kind::Bilinear2: return pseudomode::CouplingKind::Bilinear2;
    case oracle::Kind::ThreeWave: return pseudomode::CouplingKind::ThreeWave;
    case oracle::Kind::Bilinear4: return pseudomode::CouplingKind::Bilinear4;
    case oracle::Kind::FourWave: return pseudomode::CouplingKind::FourWave;
    }
    return pseudomode::CouplingKind::Bilinear2;
}

inline pseudomode::ModeNetwork to_network(const oracle::Params& p)
{
    std::vector<pseudomode::Mode> modes;
    for (std::size_t i = 0; i < p.omega.size(); ++i) modes.push_back({p.omega[i], p.kerr[i]});
    return pseudomode::ModeNetwork(std::move(modes), p.chi, {to_kind(p.kind), p.g});
}

inline oracle::Occ occ(const pseudomode::FockState& s) { return s.n; }

inline constexpr oracle::Kind kAllKinds[] = {oracle::Kind::Bilinear2, oracle::Kind::ThreeWave,
                                             oracle::Kind::Bilinear4, oracle::Kind::FourWave};

} // namespace testing_support
