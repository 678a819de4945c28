// reduction.cpp: Table-driven local channel elimination

#include "pseudomode/reduction.hpp"

#include <cmath>

#include "pseudomode/errors.hpp"
#include "pseudomode/memory.hpp"

namespace pseudomode {

namespace {

void require_kind(const ModeNetwork& net, CouplingKind expected, const char* op)
{
    if (net.kind() != expected) {
        throw ValidationError(std::string(op) + " requires a " + std::string(to_string(expected)) +
                              " network (got " + std::string(to_string(net.kind())) + ")");
    }
}

ReducedChannel reduce_checked(const ModeNetwork& net, const FockState& s)
{
    const auto freq = transition_frequencies(net, s); // throws ChannelUndefinedError
    const double m2 = net.g() * net.g() * static_cast<double>(squared_matrix_factor(net, s));
    return make_channel(channel_case_for(net.kind()), s, freq.omega_alpha, freq.omega_beta, m2,
                        diagonal_energy(net, transition_reference(net, s)),
                        channel_validity(net, s));
}

} // namespace

std::string_view to_string(ChannelCase c)
{
    switch (c) {
    case ChannelCase::TwoModeBilinear: return "two_mode_bilinear";
    case ChannelCase::ThreeWaveMixing: return "three_wave_mixing";
    case ChannelCase::FourModeBilinear: return "four_mode_bilinear";
    case ChannelCase::FourWaveParent: return "four_wave_parent";
    }
    return "unknown";
}

ChannelCase channel_case_for(CouplingKind kind)
{
    switch (kind) {
    case CouplingKind::Bilinear2: return ChannelCase::TwoModeBilinear;
    case CouplingKind::ThreeWave: return ChannelCase::ThreeWaveMixing;
    case CouplingKind::Bilinear4: return ChannelCase::FourModeBilinear;
    case CouplingKind::FourWave: return ChannelCase::FourWaveParent;
    }
    return ChannelCase::TwoModeBilinear;
}

std::string_view to_string(ChannelValidity v)
{
    return v == ChannelValidity::BoundaryExact ? "boundary_exact" : "local_projection";
}

ReducedChannel make_channel(ChannelCase kind, FockState source, double omega_alpha,
                            double omega_beta, double m2, double reference_energy,
                            ChannelValidity validity)
{
    ReducedChannel ch;
    ch.kind = kind;
    ch.source = std::move(source);
    ch.omega_alpha = omega_alpha;
    ch.omega_beta = omega_beta;
    ch.m2 = m2;
    ch.poles = dressed_poles_local(omega_alpha, omega_beta, m2);
    ch.reference_energy = reference_energy;
    ch.validity = validity;
    return ch;
}

ReducedChannel reduce_two_mode(const ModeNetwork& net, const FockState& s)
{
    require_kind(net, CouplingKind::Bilinear2, "reduce_two_mode");
    return reduce_checked(net, s);
}

ReducedChannel reduce_three_mode(const ModeNetwork& net, const FockState& s)
{
    require_kind(net, CouplingKind::ThreeWave, "reduce_three_mode");
    return reduce_checked(net, s);
}

ReducedChannel reduce_four_mode(const ModeNetwork& net, const FockState& s)
{
    require_kind(net, CouplingKind::Bilinear4, "reduce_four_mode");
    return reduce_checked(net, s);
}

ReducedChannel reduce_four_wave_parent(const ModeNetwork& net, const FockState& s)
{
    require_kind(net, CouplingKind::FourWave, "reduce_four_wave_parent");
    return reduce_checked(net, s);
}

ReducedChannel reduce(const ModeNetwork& net, const FockState& s)
{
    switch (net.kind()) {
    case CouplingKind::Bilinear2: return reduce_two_mode(net, s);
    case CouplingKind::ThreeWave: return reduce_three_mode(net, s);
    case CouplingKind::Bilinear4: return reduce_four_mode(net, s);
    case CouplingKind::FourWave: return reduce_four_wave_parent(net, s);
    }
    throw ValidationError("unsupported coupling kind");
}

ChannelValidity channel_validity(const ModeNetwork& net, const FockState& s)
{
    const FockState target = channel_target(net, s);
    // The chain continues below s when s is itself the target of a step, and
    // above the target when the target can step again.
    FockState below = s;
    const auto step = channel_step(net.kind());
    for (std::size_t i = 0; i < below.size(); ++i) below[i] -= step[i];
    const bool open_below = below.physical() && squared_matrix_factor(net, below) > 0;
    const bool open_above = squared_matrix_factor(net, target) > 0;
    return (open_below || open_above) ? ChannelValidity::LocalProjection
                                      : ChannelValidity::BoundaryExact;
}

Complex channel_self_energy(const ReducedChannel& ch, ComplexFrequency zf)
{
    const Complex den = zf.value() - ch.omega_beta;
    if (std::abs(den) < kPoleGuard) {
        throw PoleProximityError("channel self-energy evaluated on its pole", 0);
    }
    return ch.m2 / den;
}

Complex channel_green(const ReducedChannel& ch, ComplexFrequency zf)
{
    const Complex z = zf;
    const double near = std::min(std::abs(z - ch.poles.lower), std::abs(z - ch.poles.upper));
    if (near < kChannelPoleGuard) {
        throw PoleProximityError("channel Green function evaluated within 1e-12 of a dressed pole", 0);
    }
    return (z - ch.omega_beta) / ((z - ch.omega_alpha) * (z - ch.omega_beta) - ch.m2);
}

PoleResidueSet channel_kernel(const ReducedChannel& ch)
{
    PoleResidueSet set;
    set.terms.push_back({Complex{ch.omega_beta, 0.0}, Complex{ch.m2, 0.0}});
    return set;
}

} // namespace pseudomode
