#include <sstream>

#include <gtest/gtest.h>

#include "pseudomode/io.hpp"

using namespace pseudomode;

namespace {

ModeNetwork sample_network()
{
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(3, 3);
    chi(0, 1) = chi(1, 0) = -0.0021;
    chi(1, 2) = chi(2, 1) = 0.1 / 3.0;
    return ModeNetwork({{4.1, -0.01}, {5.3, 0.0}, {9.4, -1.0 / 7.0}}, chi, {CouplingKind::ThreeWave, 0.05});
}

Json reparse(const Json& j) { return Json::parse(io::dump(j)); }

} // namespace

TEST(IoNetwork, RoundTripIsExact)
{
    const auto net = sample_network();
    const auto back = io::network_from_json(reparse(io::network_to_json(net)));
    ASSERT_EQ(back.size(), net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        EXPECT_EQ(back.omega(i), net.omega(i));
        EXPECT_EQ(back.kerr(i), net.kerr(i));
    }
    EXPECT_EQ(back.cross_kerr(), net.cross_kerr());
    EXPECT_EQ(back.kind(), net.kind());
    EXPECT_EQ(back.g(), net.g());
}

TEST(IoNetwork, DriveModeSurvives)
{
    const auto net = ModeNetwork::uncoupled_kerr({{1, 0}, {1, 0}, {2, 0}, {1, 0}}, {CouplingKind::FourWave, 0.1});
    const auto back = io::network_from_json(reparse(io::network_to_json(net)));
    ASSERT_TRUE(back.drive_mode().has_value());
    EXPECT_EQ(*back.drive_mode(), 3u);
}

TEST(IoNetwork, DefaultsForOptionalFields)
{
    const auto j = Json::parse(R"({"modes":[{"omega":1.0},{"omega":2.0}],"coupling":{"kind":"bilinear2","g":0.1}})");
    const auto net = io::network_from_json(j);
    EXPECT_EQ(net.kerr(0), 0.0);
    EXPECT_EQ(net.chi(0, 1), 0.0);
}

TEST(IoNetwork, MissingCouplingStrengthNamesField)
{
    const auto j = Json::parse(R"({"modes":[{"omega":1.0},{"omega":2.0}],"coupling":{"kind":"bilinear2"}})");
    try {
        io::network_from_json(j);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "network.coupling.g");
    }
}

TEST(IoNetwork, BadModeEntryNamesIndex)
{
    const auto j = Json::parse(R"({"modes":[{"omega":1.0},{"kerr":2.0}],"coupling":{"kind":"bilinear2","g":0.1}})");
    try {
        io::network_from_json(j);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "network.modes[1].omega");
    }
}

TEST(IoNetwork, ModelValidationStillApplies)
{
    const auto j = Json::parse(R"({"modes":[{"omega":1.0}],"coupling":{"kind":"bilinear2","g":0.1}})");
    EXPECT_THROW(io::network_from_json(j), ValidationError);
}

TEST(IoNetwork, UnknownCouplingKind)
{
    const auto j = Json::parse(R"({"modes":[{"omega":1.0},{"omega":2.0}],"coupling":{"kind":"sixwave","g":0.1}})");
    EXPECT_THROW(io::network_from_json(j), ValidationError);
}

TEST(IoDrive, RoundTripIsExact)
{
    DriveSpec s;
    s.g_sb = 0.1 / 3.0;
    s.mass = 1.7;
    s.cutoff = 2.9;
    s.g_e = 0.3;
    s.a_rf = 1.1;
    s.omega_rf = 4.4;
    s.g_eb = 0.2;
    s.kappa_d = 0.05;
    s.omega_d = 4.0;
    const auto b = io::drive_from_json(reparse(io::drive_to_json(s)));
    EXPECT_EQ(b.g_sb, s.g_sb);
    EXPECT_EQ(b.mass, s.mass);
    EXPECT_EQ(b.cutoff, s.cutoff);
    EXPECT_EQ(b.g_e, s.g_e);
    EXPECT_EQ(b.a_rf, s.a_rf);
    EXPECT_EQ(b.omega_rf, s.omega_rf);
    EXPECT_EQ(b.g_eb, s.g_eb);
    EXPECT_EQ(b.kappa_d, s.kappa_d);
    EXPECT_EQ(b.omega_d, s.omega_d);
}

TEST(IoPoleResidue, RoundTripIsExact)
{
    const PoleResidueSet prs{{{Complex{0.1, -1.0 / 3.0}, Complex{2.0 / 7.0, -1e-17}}, {Complex{-1.5, 0.0}, Complex{0.25, 0.0}}}};
    const auto back = io::pole_residue_from_json(reparse(io::pole_residue_to_json(prs)), "kernel");
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t l = 0; l < 2; ++l) {
        EXPECT_EQ(back.terms[l].pole, prs.terms[l].pole);
        EXPECT_EQ(back.terms[l].residue, prs.terms[l].residue);
    }
}

TEST(IoSector, RoundTripIsExact)
{
    const auto net = sample_network();
    const auto sector = enumerate_sector(net, charges_of(net, {3, 2, 0}));
    const auto back = io::sector_from_json(reparse(io::sector_to_json(sector)), "sector");
    EXPECT_EQ(back.kind, sector.kind);
    EXPECT_EQ(back.charges, sector.charges);
    EXPECT_EQ(back.states, sector.states);
    EXPECT_EQ(back.diagonal_energies, sector.diagonal_energies);
    EXPECT_EQ(back.jumps, sector.jumps);
}

TEST(IoChannel, RoundTripIsExact)
{
    const auto ch = reduce(sample_network(), {2, 3, 1});
    const auto back = io::channel_from_json(reparse(io::channel_to_json(ch)), "channel");
    EXPECT_EQ(back.kind, ch.kind);
    EXPECT_EQ(back.source, ch.source);
    EXPECT_EQ(back.omega_alpha, ch.omega_alpha);
    EXPECT_EQ(back.omega_beta, ch.omega_beta);
    EXPECT_EQ(back.m2, ch.m2);
    EXPECT_EQ(back.poles.lower, ch.poles.lower);
    EXPECT_EQ(back.poles.upper, ch.poles.upper);
    EXPECT_EQ(back.reference_energy, ch.reference_energy);
    EXPECT_EQ(back.validity, ch.validity);
}

TEST(IoStiffPump, RoundTripIsExact)
{
    StiffPumpReduction r;
    r.beta = Complex{3.0, -1.0 / 3.0};
    r.g3_eff = Complex{0.01, 0.02};
    r.stark_shifts = {-0.1, 0.0, 1.0 / 9.0};
    const auto b = io::stiff_pump_from_json(reparse(io::stiff_pump_to_json(r)), "stiff_pump");
    EXPECT_EQ(b.beta, r.beta);
    EXPECT_EQ(b.g3_eff, r.g3_eff);
    EXPECT_EQ(b.stark_shifts, r.stark_shifts);
}

TEST(IoCollapseRow, RoundTripIsExact)
{
    CollapseRow row;
    row.beta_magnitude = 8.0;
    row.k = 64;
    row.g4 = 0.0025;
    row.parent = {Complex{1.0 / 3.0, 0.0}, Complex{2.5, 0.0}};
    row.reduced = {Complex{0.3, 0.0}, Complex{2.4, 0.0}};
    row.mismatch = 0.1;
    row.splitting = 2.1;
    const auto b = io::collapse_row_from_json(reparse(io::collapse_row_to_json(row)), "row");
    EXPECT_EQ(b.beta_magnitude, row.beta_magnitude);
    EXPECT_EQ(b.k, row.k);
    EXPECT_EQ(b.g4, row.g4);
    EXPECT_EQ(b.parent.lower, row.parent.lower);
    EXPECT_EQ(b.reduced.upper, row.reduced.upper);
    EXPECT_EQ(b.mismatch, row.mismatch);
    EXPECT_EQ(b.splitting, row.splitting);
}

TEST(IoDump, DeterministicAndSeventeenDigits)
{
    const Json j{{"b", 0.1}, {"a", 1.0 / 3.0}, {"list", {1, 2}}};
    EXPECT_EQ(io::dump(j), io::dump(Json::parse(io::dump(j))));
    EXPECT_NE(io::dump(j).find("0.33333333333333331"), std::string::npos) << io::dump(j);
}

TEST(IoTable, HeaderThenRows)
{
    io::Table t({"t [1/g]", "re_c", "im_c"});
    t.row({io::format_number(0.5), io::format_number(1.0), io::format_number(-0.25)});
    std::ostringstream os;
    t.write(os);
    EXPECT_EQ(os.str(), "t [1/g],re_c,im_c\n0.5,1.0,-0.25\n");
    EXPECT_THROW(t.row({"1"}), std::logic_error);
}

TEST(IoTable, NumbersRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678901234567}) {
        EXPECT_EQ(std::stod(io::format_number(v)), v);
    }
}
