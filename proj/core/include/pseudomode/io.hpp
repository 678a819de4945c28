// io.hpp: Structured-text (JSON) schemas and delimited-text tables
//
// Complex numbers are written as two-element arrays [re, im]. Fock states
// and charges are integer arrays. Field names mirror the C++ member names.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseudomode/drive.hpp"
#include "pseudomode/errors.hpp"
#include "pseudomode/fit.hpp"
#include "pseudomode/memory.hpp"
#include "pseudomode/model.hpp"
#include "pseudomode/reduction.hpp"

namespace pseudomode {

using Json = nlohmann::json;

// Schema violation in a structured document; `field` is the dotted path of
// the offending entry (e.g. "network.coupling.g").
class ConfigError : public ValidationError {
public:
    ConfigError(const std::string& field, const std::string& problem)
        : ValidationError(field + ": " + problem), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

namespace io {

// Typed accessors that report the full field path on failure.
const Json& require(const Json& obj, const std::string& key, const std::string& path);
double get_number(const Json& obj, const std::string& key, const std::string& path);
double get_number_or(const Json& obj, const std::string& key, const std::string& path, double fallback);
std::int64_t get_integer(const Json& obj, const std::string& key, const std::string& path);
std::string get_string(const Json& obj, const std::string& key, const std::string& path);
Complex get_complex(const Json& value, const std::string& path);
FockState get_fock_state(const Json& value, const std::string& path);

Json complex_to_json(Complex z);

Json network_to_json(const ModeNetwork& net);
ModeNetwork network_from_json(const Json& j, const std::string& path = "network");

Json drive_to_json(const DriveSpec& spec);
DriveSpec drive_from_json(const Json& j, const std::string& path = "drive");

Json pole_residue_to_json(const PoleResidueSet& prs);
PoleResidueSet pole_residue_from_json(const Json& j, const std::string& path);

Json sector_to_json(const SectorBasis& sector);
SectorBasis sector_from_json(const Json& j, const std::string& path);

Json channel_to_json(const ReducedChannel& ch);
ReducedChannel channel_from_json(const Json& j, const std::string& path);

Json collapse_row_to_json(const CollapseRow& row);
CollapseRow collapse_row_from_json(const Json& j, const std::string& path);

Json stiff_pump_to_json(const StiffPumpReduction& red);
StiffPumpReduction stiff_pump_from_json(const Json& j, const std::string& path);

// Serialized with a fixed key order and 17 significant digits.
std::string dump(const Json& j);

// Delimited table: one header line of column names (with units in brackets),
// then comma-separated rows; floating-point values use 17 significant digits.
class Table {
public:
    explicit Table(std::vector<std::string> columns);
    Table& row(std::vector<std::string> cells);
    void write(std::ostream& os) const;
    std::size_t size() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double v);
std::string format_integer(std::int64_t v);

} // namespace io
} // namespace pseudomode
