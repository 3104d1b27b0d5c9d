#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ecv/mcmc.hpp"
#include "ecv/phase.hpp"

namespace ecv {

// Key/value pairs stamped as `# key: value` lines (CSV) or a "meta" object
// (JSON) into every output artifact, in insertion order.  Always includes
// enough to rerun the command: version, config string + hash, seed.
struct run_metadata {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, std::uint64_t value);
    void add(std::string key, std::int64_t value);
};

std::uint64_t config_hash(const std::string& canonical);

// shortest round-trip-exact decimal; inf/nan spelled out
std::string format_double(double v);

void write_curves_csv(const std::filesystem::path& file, const run_metadata& meta,
                      const std::vector<free_energy_curve>& curves);
void write_curves_json(const std::filesystem::path& file, const run_metadata& meta,
                       const std::vector<free_energy_curve>& curves);

void write_diagram_csv(const std::filesystem::path& file, const run_metadata& meta,
                       const phase_diagram& diagram);
void write_critical_json(const std::filesystem::path& file, const run_metadata& meta,
                         const phase_diagram& diagram);

void write_orderparam_csv(const std::filesystem::path& file, const run_metadata& meta,
                          const std::vector<experiment_point>& points);
void write_orderparam_json(const std::filesystem::path& file, const run_metadata& meta,
                           const std::vector<experiment_point>& points);

void write_events_csv(const std::filesystem::path& file, const run_metadata& meta,
                      const event_tally& tally);
void write_events_json(const std::filesystem::path& file, const run_metadata& meta,
                       const event_tally& tally);

// Line-delimited trajectory log: one `T index seed completed steps toggles`
// line per trajectory followed by its `E step i j F|D class m` event records.
void write_trajectories_log(const std::filesystem::path& file, const run_metadata& meta,
                            const std::vector<trajectory_summary>& trajectories);

}  // namespace ecv
