// model.hpp: Kerr-coupled bosonic mode networks, Fock states and fixed sectors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pseudomode {

// Number-conserving exchange channels. Mode slots are fixed per kind:
//   Bilinear2  g(a^dag b + h.c.)               on (a, b)
//   ThreeWave  g(a b c^dag + h.c.)             on (a, b, c)
//   Bilinear4  g(c d^dag + h.c.)               on (c, d), a and b spectators
//   FourWave   g(a b c^dag d^dag + h.c.)       on (a, b, c, d), d the drive mode
enum class CouplingKind { Bilinear2, ThreeWave, Bilinear4, FourWave };

std::string_view to_string(CouplingKind kind);
CouplingKind coupling_kind_from_string(std::string_view name);

// Number of modes a network with this coupling must carry.
std::size_t mode_count(CouplingKind kind);

struct Mode {
    double omega{0.0};
    double kerr{0.0};
};

struct CouplingTerm {
    CouplingKind kind{CouplingKind::Bilinear2};
    double g{0.0}; // real, non-negative
};

// Occupation numbers, one per mode. Entries are signed so that channel steps
// off the edge of the Fock space (e.g. |0> lowered) can be represented and
// rejected by the operations that care.
struct FockState {
    std::vector<std::int64_t> n;

    FockState() = default;
    FockState(std::initializer_list<std::int64_t> occ) : n(occ) {}
    explicit FockState(std::vector<std::int64_t> occ) : n(std::move(occ)) {}

    std::size_t size() const noexcept { return n.size(); }
    std::int64_t operator[](std::size_t i) const { return n[i]; }
    std::int64_t& operator[](std::size_t i) { return n[i]; }
    bool physical() const noexcept;

    friend bool operator==(const FockState&, const FockState&) = default;
};

std::string to_string(const FockState& s);

class ModeNetwork {
public:
    // Validates: mode count matches the coupling kind, cross_kerr is
    // symmetric with zero diagonal, g finite and non-negative. Throws
    // ValidationError otherwise.
    ModeNetwork(std::vector<Mode> modes, Eigen::MatrixXd cross_kerr, CouplingTerm coupling,
                std::optional<std::size_t> drive_mode = std::nullopt);

    // Convenience for tests and examples: all cross-Kerr entries zero.
    static ModeNetwork uncoupled_kerr(std::vector<Mode> modes, CouplingTerm coupling);

    std::size_t size() const noexcept { return modes_.size(); }
    const std::vector<Mode>& modes() const noexcept { return modes_; }
    const Mode& mode(std::size_t i) const { return modes_.at(i); }
    double omega(std::size_t i) const { return modes_.at(i).omega; }
    double kerr(std::size_t i) const { return modes_.at(i).kerr; }
    double chi(std::size_t i, std::size_t j) const { return cross_kerr_(i, j); }
    const Eigen::MatrixXd& cross_kerr() const noexcept { return cross_kerr_; }
    const CouplingTerm& coupling() const noexcept { return coupling_; }
    CouplingKind kind() const noexcept { return coupling_.kind; }
    double g() const noexcept { return coupling_.g; }
    std::optional<std::size_t> drive_mode() const noexcept { return drive_mode_; }

    ModeNetwork with_coupling_strength(double g) const;
    ModeNetwork with_mode_frequency(std::size_t i, double omega) const;

private:
    std::vector<Mode> modes_;
    Eigen::MatrixXd cross_kerr_;
    CouplingTerm coupling_;
    std::optional<std::size_t> drive_mode_;
};

// Per-mode occupation change of one forward channel step (source -> target).
std::vector<std::int64_t> channel_step(CouplingKind kind);

// Target of the forward channel step from s (may be unphysical).
FockState channel_target(const ModeNetwork& net, const FockState& s);

// Conserved quantities of a sector; meaning depends on the coupling kind:
//   Bilinear2  {N, -, -}         N = n + m
//   ThreeWave  {Q, D, -}         Q = n + m + 2l, D = n - m
//   Bilinear4  {N, A, B}         N = n + m + l + k, spectators frozen at n = A, m = B
//   FourWave   {P, R, S}         P = n + l, R = m + l, S = k - l
using Charges = std::array<std::int64_t, 3>;

namespace charges {
Charges bilinear2(std::int64_t total);
Charges three_wave(std::int64_t q, std::int64_t d);
Charges bilinear4(std::int64_t total, std::int64_t spectator_a, std::int64_t spectator_b);
Charges four_wave(std::int64_t a_plus_c, std::int64_t b_plus_c, std::int64_t d_minus_c);
} // namespace charges

Charges charges_of(const ModeNetwork& net, const FockState& s);
std::string to_string(CouplingKind kind, const Charges& q);

// A fixed-charge subspace as a nearest-neighbour chain. States are ordered by
// the chain coordinate r (quanta transferred along the channel), ascending.
struct SectorBasis {
    CouplingKind kind{CouplingKind::Bilinear2};
    Charges charges{};
    std::vector<FockState> states;
    std::vector<double> diagonal_energies;
    std::vector<double> jumps; // jumps[r] couples states[r] and states[r + 1]

    std::size_t dimension() const noexcept { return states.size(); }
    // Chain position of s, or nullopt when s lies outside the sector.
    std::optional<std::size_t> index_of(const FockState& s) const;
};

inline constexpr std::size_t kMaxSectorDimension = 1'000'000;

// Sum_i n_i w_i + Sum_i (K_i/2) n_i (n_i - 1) + Sum_{i<j} chi_ij n_i n_j.
double diagonal_energy(const ModeNetwork& net, const FockState& s);

// <to|V|from> for the network's coupling; zero unless from and to are joined
// by one channel step in either direction.
double matrix_element(const ModeNetwork& net, const FockState& from, const FockState& to);

// Integer |M|^2 / g^2 of the forward step from s (the per-channel factor
// n(m+1), nm(l+1), l(k+1), nm(l+1)(k+1)). Zero when the step leaves Fock space.
std::int64_t squared_matrix_factor(const ModeNetwork& net, const FockState& s);

struct TransitionFrequencies {
    double omega_alpha{0.0};
    double omega_beta{0.0};
};

// Occupation-conditioned pair (retained, eliminated) for the forward channel
// step from s. Throws ChannelUndefinedError when the step is not allowed.
TransitionFrequencies transition_frequencies(const ModeNetwork& net, const FockState& s);

// Energy of the state both transition frequencies are measured from, so that
// E(s) = ref + omega_alpha and E(target) = ref + omega_beta.
FockState transition_reference(const ModeNetwork& net, const FockState& s);

SectorBasis enumerate_sector(const ModeNetwork& net, const Charges& q);

} // namespace pseudomode
