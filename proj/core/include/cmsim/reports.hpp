#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cmsim/simulation.hpp"

namespace cmsim {

/// One in-memory report file.
struct ReportFile {
    std::string name;
    std::string contents;

    std::size_t line_count() const noexcept;
};

/// networth.csv, complexity.csv, hidden_units.csv, trades.csv,
/// final_state.csv and config.resolved, in that order.
std::vector<ReportFile> render_reports(const RunOutput& output);

/// `file,lines` table over `files`.
ReportFile render_manifest(const std::vector<ReportFile>& files);

/// Writes `files` plus a manifest into `dir`. Every file is staged next to
/// its destination and renamed into place only once all of them were
/// written; an unwritable directory fails before any report is replaced.
void write_report_files(const std::vector<ReportFile>& files, const std::filesystem::path& dir);

/// render_reports + write_report_files.
void emit_reports(const RunOutput& output, const std::filesystem::path& dir);

/// Records an aborted run: a manifest naming the error and listing nothing.
void write_abort_manifest(const std::filesystem::path& dir, const std::string& error_class,
                          const std::string& message);

}  // namespace cmsim
