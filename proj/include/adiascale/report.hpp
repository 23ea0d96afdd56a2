// report.hpp - flat-file outputs: CSV, JSON lines, plot data and manifest.
//
// records.csv / records.jsonl  one row per ladder point (fixed column order)
// qd_over_l_<V>.dat            two columns: L, Q_D/L for proxy variant V
// fits.json                    a, b, residual, stderr per variant
// dim_study.csv                dim, mean L, std L, samples, redraws
// length_vs_dim.dat            two columns: dim, mean L
// manifest.json                config, config hash, generator identity, files
// timings.csv                  wall time per ladder point (not deterministic)
#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "adiascale/sweep.hpp"

namespace adiascale {

enum class ReportFormat { csv, jsonl, plotdata };

ReportFormat report_format_from_string(const std::string& name);

// Column order of records.csv.
const std::vector<std::string>& record_columns();

nlohmann::json record_to_json(const TraversalRecord& record);
TraversalRecord record_from_json(const nlohmann::json& doc);

void write_records_csv(const std::vector<TraversalRecord>& records, const std::filesystem::path& file);
std::vector<TraversalRecord> read_records_csv(const std::filesystem::path& file);

void append_record_jsonl(const TraversalRecord& record, const std::filesystem::path& file);
std::vector<TraversalRecord> read_records_jsonl(const std::filesystem::path& file);

// Writes the requested formats plus fits.json and manifest.json into `dir`
// (created if missing). Throws std::runtime_error if `dir` is not writable
// and std::invalid_argument for an empty series.
void emit_report(const ScalingSeries& series, const SweepConfig& config, const std::filesystem::path& dir,
                 const std::set<ReportFormat>& formats);
void emit_report(const DimStudyTable& table, const std::filesystem::path& dir,
                 const std::set<ReportFormat>& formats);

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& config, const std::string& hash,
                    const std::vector<std::string>& files);
nlohmann::json read_manifest(const std::filesystem::path& dir);

}  // namespace adiascale
