// cli.hpp: Config-driven front end for the pseudomode engine

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pseudomode/io.hpp"

namespace pseudomode::cli {

enum class Command { Sector, Poles, Reduce, Dynamics, Fit, Displace };
enum class OutputFormat { Delimited, Structured };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

struct SectorParams {
    std::optional<Charges> charges;
    std::optional<FockState> state; // alternative to charges: the sector containing this state
};

struct PolesParams {
    FockState source;
};

struct ReduceParams {
    FockState source;
    FrequencyWindow window;
    std::size_t points{201};
    std::optional<double> eta; // default 1e-3 * window width
};

struct DynamicsParams {
    // Kernel either from a reduced channel at `source` or given explicitly.
    std::optional<FockState> source;
    std::optional<PoleResidueSet> kernel;
    double omega_alpha{0.0};
    Complex c0{1.0, 0.0};
    double T{0.0};
    std::optional<double> dt; // absent: built-in convergence rule
    double tolerance{1e-6};
};

struct FitParams {
    enum class Source { Kernel, Density, Samples } source{Source::Kernel};
    PoleResidueSet kernel;
    std::vector<FrequencySample> samples;
    FrequencyWindow window;
    std::size_t n_poles{1};
    std::size_t points{401};
    std::size_t bound_points{2001};
    double omega_alpha{0.0};
};

struct DisplaceParams {
    std::vector<double> betas;
    FockState source;
    std::optional<double> effective_coupling;
};

struct RunConfig {
    std::optional<ModeNetwork> network; // required by every command except fit and kernel dynamics
    std::optional<DriveSpec> drive;
    Command command{Command::Sector};
    SectorParams sector;
    PolesParams poles;
    ReduceParams reduce;
    DynamicsParams dynamics;
    FitParams fit;
    DisplaceParams displace;
    std::string output_path; // empty: standard output
    OutputFormat output_format{OutputFormat::Delimited};
    std::size_t threads{1};
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

// Runs the command and writes the result to `out`.
void execute(const RunConfig& config, std::ostream& out);

// Exit status.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInternal = 1;

// Loads, executes and writes to config.output_path (or `fallback`). Maps
// ValidationError to 2 and NumericalError to 3; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& fallback, std::ostream& err);
int run_file(const std::string& config_path, std::ostream& fallback, std::ostream& err,
             const std::optional<std::string>& output_override = std::nullopt,
             const std::optional<OutputFormat>& format_override = std::nullopt);

} // namespace pseudomode::cli
