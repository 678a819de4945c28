// model.cpp: Mode networks, channel algebra and fixed-sector enumeration

#include "pseudomode/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pseudomode/errors.hpp"

namespace pseudomode {

namespace {

void require_compatible(const ModeNetwork& net, const FockState& s)
{
    if (s.size() != net.size()) {
        std::ostringstream os;
        os << "Fock state " << to_string(s) << " has " << s.size()
           << " entries but the network has " << net.size() << " modes";
        throw ValidationError(os.str());
    }
}

void require_physical(const FockState& s)
{
    if (!s.physical()) {
        throw ValidationError("Fock state " + to_string(s) + " has a negative occupation");
    }
}

double d(std::int64_t v) { return static_cast<double>(v); }

} // namespace

std::string_view to_string(CouplingKind kind)
{
    switch (kind) {
    case CouplingKind::Bilinear2: return "bilinear2";
    case CouplingKind::ThreeWave: return "three_wave";
    case CouplingKind::Bilinear4: return "bilinear4";
    case CouplingKind::FourWave: return "four_wave";
    }
    return "unknown";
}

CouplingKind coupling_kind_from_string(std::string_view name)
{
    if (name == "bilinear2") return CouplingKind::Bilinear2;
    if (name == "three_wave") return CouplingKind::ThreeWave;
    if (name == "bilinear4") return CouplingKind::Bilinear4;
    if (name == "four_wave") return CouplingKind::FourWave;
    throw ValidationError("unknown coupling kind '" + std::string(name) +
                          "' (expected bilinear2, three_wave, bilinear4 or four_wave)");
}

std::size_t mode_count(CouplingKind kind)
{
    switch (kind) {
    case CouplingKind::Bilinear2: return 2;
    case CouplingKind::ThreeWave: return 3;
    case CouplingKind::Bilinear4:
    case CouplingKind::FourWave: return 4;
    }
    return 0;
}

bool FockState::physical() const noexcept
{
    return std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v >= 0; });
}

std::string to_string(const FockState& s)
{
    std::ostringstream os;
    os << '|';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    os << '>';
    return os.str();
}

ModeNetwork::ModeNetwork(std::vector<Mode> modes, Eigen::MatrixXd cross_kerr, CouplingTerm coupling,
                         std::optional<std::size_t> drive_mode)
    : modes_(std::move(modes)), cross_kerr_(std::move(cross_kerr)), coupling_(coupling),
      drive_mode_(drive_mode)
{
    const auto count = modes_.size();
    if (count < 2 || count > 4) {
        throw ValidationError("mode count must be 2, 3 or 4 (got " + std::to_string(count) + ")");
    }
    if (count != mode_count(coupling_.kind)) {
        throw ValidationError("coupling " + std::string(to_string(coupling_.kind)) + " requires " +
                              std::to_string(mode_count(coupling_.kind)) + " modes (got " +
                              std::to_string(count) + ")");
    }
    const auto n = static_cast<Eigen::Index>(count);
    if (cross_kerr_.rows() != n || cross_kerr_.cols() != n) {
        throw ValidationError("cross_kerr must be a " + std::to_string(count) + "x" +
                              std::to_string(count) + " matrix");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (cross_kerr_(i, i) != 0.0) {
            throw ValidationError("cross_kerr diagonal must be zero");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(cross_kerr_(i, j))) {
                throw ValidationError("cross_kerr entries must be finite");
            }
            if (cross_kerr_(i, j) != cross_kerr_(j, i)) {
                throw ValidationError("cross_kerr must be symmetric");
            }
        }
    }
    for (const auto& m : modes_) {
        if (!std::isfinite(m.omega) || !std::isfinite(m.kerr)) {
            throw ValidationError("mode frequencies and Kerr coefficients must be finite");
        }
    }
    if (!std::isfinite(coupling_.g) || coupling_.g < 0.0) {
        throw ValidationError("coupling.g must be finite and non-negative");
    }
    if (drive_mode_ && *drive_mode_ >= count) {
        throw ValidationError("drive_mode index out of range");
    }
}

ModeNetwork ModeNetwork::uncoupled_kerr(std::vector<Mode> modes, CouplingTerm coupling)
{
    const auto n = static_cast<Eigen::Index>(modes.size());
    std::optional<std::size_t> drive;
    if (coupling.kind == CouplingKind::FourWave) drive = 3;
    return ModeNetwork(std::move(modes), Eigen::MatrixXd::Zero(n, n), coupling, drive);
}

ModeNetwork ModeNetwork::with_coupling_strength(double g) const
{
    return ModeNetwork(modes_, cross_kerr_, CouplingTerm{coupling_.kind, g}, drive_mode_);
}

ModeNetwork ModeNetwork::with_mode_frequency(std::size_t i, double omega) const
{
    auto modes = modes_;
    modes.at(i).omega = omega;
    return ModeNetwork(std::move(modes), cross_kerr_, coupling_, drive_mode_);
}

std::vector<std::int64_t> channel_step(CouplingKind kind)
{
    switch (kind) {
    case CouplingKind::Bilinear2: return {-1, +1};
    case CouplingKind::ThreeWave: return {-1, -1, +1};
    case CouplingKind::Bilinear4: return {0, 0, -1, +1};
    case CouplingKind::FourWave: return {-1, -1, +1, +1};
    }
    return {};
}

FockState channel_target(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    const auto step = channel_step(net.kind());
    FockState t = s;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += step[i];
    return t;
}

namespace charges {
Charges bilinear2(std::int64_t total) { return {total, 0, 0}; }
Charges three_wave(std::int64_t q, std::int64_t d) { return {q, d, 0}; }
Charges bilinear4(std::int64_t total, std::int64_t spectator_a, std::int64_t spectator_b)
{
    return {total, spectator_a, spectator_b};
}
Charges four_wave(std::int64_t a_plus_c, std::int64_t b_plus_c, std::int64_t d_minus_c)
{
    return {a_plus_c, b_plus_c, d_minus_c};
}
} // namespace charges

Charges charges_of(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    switch (net.kind()) {
    case CouplingKind::Bilinear2: return charges::bilinear2(s[0] + s[1]);
    case CouplingKind::ThreeWave: return charges::three_wave(s[0] + s[1] + 2 * s[2], s[0] - s[1]);
    case CouplingKind::Bilinear4: return charges::bilinear4(s[0] + s[1] + s[2] + s[3], s[0], s[1]);
    case CouplingKind::FourWave: return charges::four_wave(s[0] + s[2], s[1] + s[2], s[3] - s[2]);
    }
    return {};
}

std::string to_string(CouplingKind kind, const Charges& q)
{
    std::ostringstream os;
    switch (kind) {
    case CouplingKind::Bilinear2: os << "N=" << q[0]; break;
    case CouplingKind::ThreeWave: os << "Q=" << q[0] << ";D=" << q[1]; break;
    case CouplingKind::Bilinear4: os << "N=" << q[0] << ";A=" << q[1] << ";B=" << q[2]; break;
    case CouplingKind::FourWave: os << "P=" << q[0] << ";R=" << q[1] << ";S=" << q[2]; break;
    }
    return os.str();
}

std::optional<std::size_t> SectorBasis::index_of(const FockState& s) const
{
    const auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

double diagonal_energy(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    require_physical(s);
    double e = 0.0;
    const auto count = net.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double ni = d(s[i]);
        e += ni * net.omega(i) + 0.5 * net.kerr(i) * ni * (ni - 1.0);
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            e += net.chi(i, j) * d(s[i]) * d(s[j]);
        }
    }
    return e;
}

std::int64_t squared_matrix_factor(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    if (!s.physical()) return 0;
    const auto step = channel_step(net.kind());
    std::int64_t factor = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (step[i] < 0) factor *= s[i];      // a|n> = sqrt(n)|n-1>
        else if (step[i] > 0) factor *= s[i] + 1; // a^dag|n> = sqrt(n+1)|n+1>
    }
    return factor;
}

double matrix_element(const ModeNetwork& net, const FockState& from, const FockState& to)
{
    require_compatible(net, from);
    require_compatible(net, to);
    if (!from.physical() || !to.physical()) return 0.0;
    if (channel_target(net, from) == to) {
        return net.g() * std::sqrt(d(squared_matrix_factor(net, from)));
    }
    if (channel_target(net, to) == from) {
        return net.g() * std::sqrt(d(squared_matrix_factor(net, to)));
    }
    return 0.0;
}

TransitionFrequencies transition_frequencies(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    if (squared_matrix_factor(net, s) == 0) {
        throw ChannelUndefinedError("channel " + std::string(to_string(net.kind())) +
                                    " is undefined at " + to_string(s));
    }
    const auto w = [&](std::size_t i) { return net.omega(i); };
    const auto K = [&](std::size_t i) { return net.kerr(i); };
    const auto chi = [&](std::size_t i, std::size_t j) { return net.chi(i, j); };
    constexpr std::size_t a = 0, b = 1, c = 2, dd = 3;

    switch (net.kind()) {
    case CouplingKind::Bilinear2: {
        const double n = d(s[a]), m = d(s[b]);
        return {w(a) + K(a) * (n - 1) + chi(a, b) * m,
                w(b) + K(b) * m + chi(a, b) * (n - 1)};
    }
    case CouplingKind::ThreeWave: {
        const double n = d(s[a]), m = d(s[b]), l = d(s[c]);
        return {w(a) + w(b) + K(a) * (n - 1) + K(b) * (m - 1) + chi(a, b) * (n + m - 1) +
                    (chi(a, c) + chi(b, c)) * l,
                w(c) + K(c) * l + chi(a, c) * (n - 1) + chi(b, c) * (m - 1)};
    }
    case CouplingKind::Bilinear4: {
        const double n = d(s[a]), m = d(s[b]), l = d(s[c]), k = d(s[dd]);
        return {w(c) + K(c) * (l - 1) + chi(a, c) * n + chi(b, c) * m + chi(c, dd) * k,
                w(dd) + K(dd) * k + chi(a, dd) * n + chi(b, dd) * m + chi(c, dd) * (l - 1)};
    }
    case CouplingKind::FourWave: {
        const double n = d(s[a]), m = d(s[b]), l = d(s[c]), k = d(s[dd]);
        return {w(a) + K(a) * (n - 1) + chi(a, b) * m + chi(a, c) * l + chi(a, dd) * k,
                w(c) + w(dd) - w(b) + K(c) * l - K(b) * (m - 1) + K(dd) * k +
                    (chi(a, c) + chi(a, dd) - chi(a, b)) * (n - 1) + chi(b, c) * (m - 1 - l) +
                    chi(b, dd) * (m - 1 - k) + chi(c, dd) * (l + k + 1)};
    }
    }
    return {};
}

FockState transition_reference(const ModeNetwork& net, const FockState& s)
{
    require_compatible(net, s);
    FockState ref = s;
    switch (net.kind()) {
    case CouplingKind::Bilinear2: ref[0] -= 1; break;
    case CouplingKind::ThreeWave: ref[0] -= 1; ref[1] -= 1; break;
    case CouplingKind::Bilinear4: ref[2] -= 1; break;
    case CouplingKind::FourWave: ref[0] -= 1; break;
    }
    return ref;
}

SectorBasis enumerate_sector(const ModeNetwork& net, const Charges& q)
{
    SectorBasis sector;
    sector.kind = net.kind();
    sector.charges = q;
    const double g = net.g();
    const auto infeasible = [&](const std::string& why) {
        return EmptySectorError("sector " + to_string(net.kind(), q) + " is empty: " + why);
    };
    const auto guard = [&](std::int64_t dim) {
        if (dim > static_cast<std::int64_t>(kMaxSectorDimension)) {
            throw ValidationError("sector " + to_string(net.kind(), q) + " has dimension " +
                                  std::to_string(dim) + ", above the limit of " +
                                  std::to_string(kMaxSectorDimension));
        }
    };

    switch (net.kind()) {
    case CouplingKind::Bilinear2: {
        const auto total = q[0];
        if (total < 0) throw infeasible("N must be non-negative");
        guard(total + 1);
        for (std::int64_t r = 0; r <= total; ++r) {
            sector.states.push_back(FockState{total - r, r});
            if (r < total) sector.jumps.push_back(g * std::sqrt(d((r + 1) * (total - r))));
        }
        break;
    }
    case CouplingKind::ThreeWave: {
        const auto qq = q[0], dq = q[1];
        if ((qq + dq) % 2 != 0) throw infeasible("Q + D must be even");
        const auto A = (qq + dq) / 2, B = (qq - dq) / 2;
        if (A < 0 || B < 0) throw infeasible("A = (Q+D)/2 and B = (Q-D)/2 must be non-negative");
        const auto last = std::min(A, B);
        guard(last + 1);
        for (std::int64_t r = 0; r <= last; ++r) {
            sector.states.push_back(FockState{A - r, B - r, r});
            if (r < last) sector.jumps.push_back(g * std::sqrt(d((A - r) * (B - r) * (r + 1))));
        }
        break;
    }
    case CouplingKind::Bilinear4: {
        const auto total = q[0], A = q[1], B = q[2];
        if (A < 0 || B < 0) throw infeasible("spectator occupations must be non-negative");
        const auto L = total - A - B;
        if (L < 0) throw infeasible("N - A - B must be non-negative");
        guard(L + 1);
        for (std::int64_t r = 0; r <= L; ++r) {
            sector.states.push_back(FockState{A, B, r, L - r});
            if (r < L) sector.jumps.push_back(g * std::sqrt(d((L - r) * (r + 1))));
        }
        break;
    }
    case CouplingKind::FourWave: {
        const auto P = q[0], R = q[1], S = q[2];
        const auto first = std::max<std::int64_t>(0, -S);
        const auto last = std::min(P, R);
        if (last < first) throw infeasible("no state with non-negative occupations");
        guard(last - first + 1);
        for (std::int64_t r = first; r <= last; ++r) {
            sector.states.push_back(FockState{P - r, R - r, r, S + r});
            if (r < last) {
                sector.jumps.push_back(g * std::sqrt(d((P - r) * (R - r) * (r + 1) * (S + r + 1))));
            }
        }
        break;
    }
    }

    sector.diagonal_energies.reserve(sector.states.size());
    for (const auto& s : sector.states) sector.diagonal_energies.push_back(diagonal_energy(net, s));
    return sector;
}

} // namespace pseudomode
