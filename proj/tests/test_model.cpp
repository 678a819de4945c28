#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pseudomode/errors.hpp"
#include "pseudomode/model.hpp"
#include "support.hpp"

using namespace pseudomode;
using testing_support::kAllKinds;
using testing_support::to_network;

namespace {

ModeNetwork two_mode(double wa, double wb, double ka, double kb, double chi, double g)
{
    Eigen::MatrixXd x(2, 2);
    x << 0, chi, chi, 0;
    return ModeNetwork({{wa, ka}, {wb, kb}}, x, {CouplingKind::Bilinear2, g});
}

ModeNetwork linear(CouplingKind kind, std::vector<double> omega, double g)
{
    std::vector<Mode> modes;
    for (double w : omega) modes.push_back({w, 0.0});
    return ModeNetwork::uncoupled_kerr(std::move(modes), {kind, g});
}

// A seed state inside the sector used by enumerate_sector for charges q.
FockState seed_for(const SectorBasis& s) { return s.states.front(); }

} // namespace

TEST(DiagonalEnergy, HandEvaluatedTwoMode)
{
    const auto net = two_mode(5, 6, -0.2, -0.2, -0.05, 0.1);
    EXPECT_NEAR(diagonal_energy(net, {2, 1}), 15.7, 1e-12);
}

TEST(DiagonalEnergy, VacuumIsZero)
{
    std::mt19937_64 rng(11);
    for (auto k : kAllKinds) {
        const auto net = to_network(oracle::random_params(k, rng));
        EXPECT_EQ(diagonal_energy(net, FockState(std::vector<std::int64_t>(net.size(), 0))), 0.0);
    }
}

TEST(DiagonalEnergy, NonInteractingSum)
{
    const auto net = linear(CouplingKind::ThreeWave, {1, 1, 1}, 0.0);
    EXPECT_DOUBLE_EQ(diagonal_energy(net, {1, 1, 1}), 3.0);
}

TEST(DiagonalEnergy, MatchesOracleOnRandomStates)
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::int64_t> occ(0, 6);
    for (auto k : kAllKinds) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto p = oracle::random_params(k, rng);
            const auto net = to_network(p);
            oracle::Occ s;
            for (std::size_t i = 0; i < net.size(); ++i) s.push_back(occ(rng));
            EXPECT_NEAR(diagonal_energy(net, FockState(s)), oracle::energy(p, s), 1e-12);
        }
    }
}

TEST(DiagonalEnergy, RejectsDimensionMismatch)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 2}, 0.1);
    EXPECT_THROW(diagonal_energy(net, {1, 0, 0}), ValidationError);
}

TEST(MatrixElement, BilinearUnitStep)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 1}, 0.1);
    EXPECT_NEAR(matrix_element(net, {1, 0}, {0, 1}), 0.1, 1e-15);
}

TEST(MatrixElement, ThreeWaveHandValue)
{
    const auto net = linear(CouplingKind::ThreeWave, {1, 2, 3}, 0.1);
    EXPECT_NEAR(matrix_element(net, {2, 3, 1}, {1, 2, 2}), 0.1 * std::sqrt(12.0), 1e-15);
}

TEST(MatrixElement, AnnihilatingVacuumGivesZero)
{
    const auto net = linear(CouplingKind::Bilinear4, {1, 1, 1, 1}, 0.7);
    EXPECT_EQ(matrix_element(net, {2, 1, 0, 3}, {2, 1, -1, 4}), 0.0);
}

TEST(MatrixElement, MatchesLadderOracleAndIsHermitian)
{
    std::mt19937_64 rng(13);
    for (auto k : kAllKinds) {
        const auto p = oracle::random_params(k, rng);
        const auto net = to_network(p);
        // Every pair of states from a flood-filled neighbourhood.
        const oracle::Occ seed(net.size(), 2);
        const auto states = oracle::connected_states(p, seed, 8);
        for (const auto& a : states) {
            for (const auto& b : states) {
                const double m = matrix_element(net, FockState(a), FockState(b));
                EXPECT_NEAR(m, oracle::coupling(p, a, b), 1e-14);
                EXPECT_EQ(m, matrix_element(net, FockState(b), FockState(a)));
            }
        }
    }
}

TEST(TransitionFrequencies, LinearLimitBareValues)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 2}, 0.1);
    const auto tf = transition_frequencies(net, {1, 0});
    EXPECT_EQ(tf.omega_alpha, 1.0);
    EXPECT_EQ(tf.omega_beta, 2.0);
    for (std::int64_t n = 1; n < 5; ++n) {
        for (std::int64_t m = 0; m < 5; ++m) {
            const auto t = transition_frequencies(net, {n, m});
            EXPECT_EQ(t.omega_alpha, 1.0);
            EXPECT_EQ(t.omega_beta, 2.0);
        }
    }
}

TEST(TransitionFrequencies, KerrShiftedRetainedFrequency)
{
    const auto net = two_mode(5, 6, -0.2, -0.2, -0.05, 0.1);
    EXPECT_NEAR(transition_frequencies(net, {2, 1}).omega_alpha, 4.75, 1e-14);
}

TEST(TransitionFrequencies, ThreeWaveResonance)
{
    const auto net = linear(CouplingKind::ThreeWave, {1, 2, 3}, 0.1);
    const auto tf = transition_frequencies(net, {1, 1, 0});
    EXPECT_EQ(tf.omega_alpha, 3.0);
    EXPECT_EQ(tf.omega_beta, 3.0);
}

TEST(TransitionFrequencies, EqualEnergyDifferencesFromReference)
{
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<std::int64_t> occ(1, 5);
    for (auto k : kAllKinds) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto p = oracle::random_params(k, rng);
            const auto net = to_network(p);
            oracle::Occ s;
            for (std::size_t i = 0; i < net.size(); ++i) s.push_back(occ(rng));
            const auto tf = transition_frequencies(net, FockState(s));
            const auto ref = transition_reference(net, FockState(s));
            const auto target = channel_target(net, FockState(s));
            const double e_ref = oracle::energy(p, ref.n);
            EXPECT_NEAR(tf.omega_alpha, oracle::energy(p, s) - e_ref, 1e-11);
            EXPECT_NEAR(tf.omega_beta, oracle::energy(p, target.n) - e_ref, 1e-11);
        }
    }
}

TEST(TransitionFrequencies, UndefinedChannelThrows)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 2}, 0.1);
    EXPECT_THROW(transition_frequencies(net, {0, 3}), ChannelUndefinedError);
    const auto three = linear(CouplingKind::ThreeWave, {1, 2, 3}, 0.1);
    EXPECT_THROW(transition_frequencies(three, {2, 0, 1}), ChannelUndefinedError);
    const auto four = linear(CouplingKind::Bilinear4, {1, 2, 3, 4}, 0.1);
    EXPECT_THROW(transition_frequencies(four, {1, 1, 0, 1}), ChannelUndefinedError);
}

TEST(EnumerateSector, BilinearTwoQuanta)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 1}, 0.3);
    const auto s = enumerate_sector(net, charges::bilinear2(2));
    ASSERT_EQ(s.dimension(), 3u);
    EXPECT_EQ(s.states[0], (FockState{2, 0}));
    EXPECT_EQ(s.states[1], (FockState{1, 1}));
    EXPECT_EQ(s.states[2], (FockState{0, 2}));
    ASSERT_EQ(s.jumps.size(), 2u);
    EXPECT_NEAR(s.jumps[0], 0.3 * std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.jumps[1], 0.3 * std::sqrt(2.0), 1e-15);
}

TEST(EnumerateSector, VacuumSector)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 1}, 0.3);
    const auto s = enumerate_sector(net, charges::bilinear2(0));
    ASSERT_EQ(s.dimension(), 1u);
    EXPECT_EQ(s.states[0], (FockState{0, 0}));
    EXPECT_TRUE(s.jumps.empty());
}

TEST(EnumerateSector, ThreeWaveChain)
{
    const auto net = linear(CouplingKind::ThreeWave, {1, 2, 3}, 0.2);
    const auto s = enumerate_sector(net, charges::three_wave(3, 1));
    ASSERT_EQ(s.dimension(), 2u);
    EXPECT_EQ(s.states[0], (FockState{2, 1, 0}));
    EXPECT_EQ(s.states[1], (FockState{1, 0, 1}));
    EXPECT_NEAR(s.jumps[0], 0.2 * std::sqrt(2.0), 1e-15);
}

TEST(EnumerateSector, InfeasibleChargesAreEmpty)
{
    const auto three = linear(CouplingKind::ThreeWave, {1, 2, 3}, 0.2);
    EXPECT_THROW(enumerate_sector(three, charges::three_wave(3, 0)), EmptySectorError);
    EXPECT_THROW(enumerate_sector(three, charges::three_wave(1, 3)), EmptySectorError);
    const auto two = linear(CouplingKind::Bilinear2, {1, 2}, 0.2);
    EXPECT_THROW(enumerate_sector(two, charges::bilinear2(-1)), EmptySectorError);
    const auto four = linear(CouplingKind::FourWave, {1, 2, 3, 4}, 0.2);
    EXPECT_THROW(enumerate_sector(four, charges::four_wave(-1, 2, 0)), EmptySectorError);
}

TEST(EnumerateSector, DimensionGuard)
{
    const auto net = linear(CouplingKind::Bilinear2, {1, 2}, 0.2);
    EXPECT_THROW(enumerate_sector(net, charges::bilinear2(2'000'000)), ValidationError);
}

// Sector states coincide with the flood-filled closure of the coupling, the
// chain is nearest-neighbour, and energies/jumps match the oracle.
TEST(EnumerateSector, MatchesFloodFillAndIsTridiagonal)
{
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<std::int64_t> occ(0, 4);
    for (auto k : kAllKinds) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto p = oracle::random_params(k, rng);
            const auto net = to_network(p);
            oracle::Occ seed;
            for (std::size_t i = 0; i < net.size(); ++i) seed.push_back(occ(rng));
            const auto q = charges_of(net, FockState(seed));
            const auto sector = enumerate_sector(net, q);
            auto expected = oracle::connected_states(p, seed, 64);
            auto got = sector.states;
            ASSERT_EQ(got.size(), expected.size());
            for (const auto& s : expected) EXPECT_TRUE(sector.index_of(FockState(s)).has_value());
            for (std::size_t i = 0; i < got.size(); ++i) {
                EXPECT_EQ(charges_of(net, got[i]), q);
                EXPECT_NEAR(sector.diagonal_energies[i], oracle::energy(p, got[i].n), 1e-11);
                for (std::size_t j = 0; j < got.size(); ++j) {
                    const double m = matrix_element(net, got[i], got[j]);
                    const auto gap = i > j ? i - j : j - i;
                    if (gap != 1) EXPECT_EQ(m, 0.0);
                }
                if (i + 1 < got.size()) {
                    EXPECT_NEAR(sector.jumps[i], oracle::coupling(p, got[i].n, got[i + 1].n), 1e-14);
                    EXPECT_GT(sector.jumps[i], 0.0);
                }
            }
            EXPECT_EQ(seed_for(sector).size(), net.size());
        }
    }
}

TEST(Charges, ConservedAcrossNonzeroElements)
{
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<std::int64_t> occ(0, 5);
    for (auto k : kAllKinds) {
        const auto p = oracle::random_params(k, rng);
        const auto net = to_network(p);
        for (int trial = 0; trial < 200; ++trial) {
            oracle::Occ a;
            for (std::size_t i = 0; i < net.size(); ++i) a.push_back(occ(rng));
            const auto b = channel_target(net, FockState(a));
            if (!b.physical()) continue;
            ASSERT_NE(matrix_element(net, FockState(a), b), 0.0);
            EXPECT_EQ(charges_of(net, FockState(a)), charges_of(net, b));
        }
    }
}

TEST(ModeNetwork, ValidatesInvariants)
{
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 0.1, 0.2, 0;
    EXPECT_THROW(ModeNetwork({{1, 0}, {1, 0}}, asym, {CouplingKind::Bilinear2, 0.1}), ValidationError);
    Eigen::MatrixXd diag(2, 2);
    diag << 0.1, 0, 0, 0;
    EXPECT_THROW(ModeNetwork({{1, 0}, {1, 0}}, diag, {CouplingKind::Bilinear2, 0.1}), ValidationError);
    EXPECT_THROW(ModeNetwork::uncoupled_kerr({{1, 0}, {1, 0}}, {CouplingKind::ThreeWave, 0.1}),
                 ValidationError);
    EXPECT_THROW(ModeNetwork::uncoupled_kerr({{1, 0}, {1, 0}}, {CouplingKind::Bilinear2, -0.1}),
                 ValidationError);
    EXPECT_NO_THROW(ModeNetwork::uncoupled_kerr({{1, 0}, {1, 0}, {1, 0}, {1, 0}},
                                                {CouplingKind::Bilinear4, 0.1}));
}

TEST(CouplingKind, NamesRoundTrip)
{
    for (auto k : kAllKinds) {
        const auto kind = testing_support::to_kind(k);
        EXPECT_EQ(coupling_kind_from_string(to_string(kind)), kind);
    }
    EXPECT_THROW(coupling_kind_from_string("five_wave"), ValidationError);
}
