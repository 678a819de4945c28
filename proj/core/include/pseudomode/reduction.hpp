// reduction.hpp: Local two-state elimination of one exchange channel
//
// Every case reduces to the same template: a retained transition Omega_alpha,
// an eliminated transition Omega_beta and a squared matrix element m2, giving
//
//   Sigma(z) = m2 / (z - Omega_beta),   G(z) = 1 / (z - Omega_alpha - Sigma(z)),
//
// with dressed poles from dressed_poles_local.

#pragma once

#include <string_view>

#include "pseudomode/model.hpp"
#include "pseudomode/resolvent.hpp"

namespace pseudomode {

struct PoleResidueSet;

enum class ChannelCase { TwoModeBilinear, ThreeWaveMixing, FourModeBilinear, FourWaveParent };

std::string_view to_string(ChannelCase c);
ChannelCase channel_case_for(CouplingKind kind);

// Whether the two-state projection is the whole fixed-charge chain
// (BoundaryExact) or a truncation of a longer chain (LocalProjection).
enum class ChannelValidity { BoundaryExact, LocalProjection };

std::string_view to_string(ChannelValidity v);

struct ReducedChannel {
    ChannelCase kind{ChannelCase::TwoModeBilinear};
    FockState source;
    double omega_alpha{0.0};
    double omega_beta{0.0};
    double m2{0.0};
    PolePair poles;
    // Energy of the common reference state; absolute energies of the two
    // dressed levels are reference_energy + poles.
    double reference_energy{0.0};
    ChannelValidity validity{ChannelValidity::LocalProjection};
};

// The generic template. All specialized reductions return exactly this.
ReducedChannel make_channel(ChannelCase kind, FockState source, double omega_alpha,
                            double omega_beta, double m2, double reference_energy,
                            ChannelValidity validity);

ReducedChannel reduce_two_mode(const ModeNetwork& net, const FockState& s);
ReducedChannel reduce_three_mode(const ModeNetwork& net, const FockState& s);
ReducedChannel reduce_four_mode(const ModeNetwork& net, const FockState& s);
ReducedChannel reduce_four_wave_parent(const ModeNetwork& net, const FockState& s);

// Dispatch on the network's coupling kind.
ReducedChannel reduce(const ModeNetwork& net, const FockState& s);

// BoundaryExact when neither endpoint of the channel couples onward.
ChannelValidity channel_validity(const ModeNetwork& net, const FockState& s);

inline constexpr double kChannelPoleGuard = 1e-12;

// m2 / (z - Omega_beta).
Complex channel_self_energy(const ReducedChannel& ch, ComplexFrequency z);

// (z - Omega_beta) / ((z - Omega_alpha)(z - Omega_beta) - m2). Throws
// PoleProximityError within kChannelPoleGuard of either dressed pole.
Complex channel_green(const ReducedChannel& ch, ComplexFrequency z);

// The eliminated sector as one pole-residue term {(Omega_beta, m2)}.
PoleResidueSet channel_kernel(const ReducedChannel& ch);

} // namespace pseudomode
