#include "cmsim/reports.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

std::string optional_number(const std::optional<double>& v) {
    return v ? fmt::format("{:.10g}", *v) : std::string();
}

std::string agent_summary(const Player& p) {
    // e.g. "3lin 7log;2lin", committees separated by ';'
    std::string out;
    for (std::size_t m = 0; m < p.committees.size(); ++m) {
        if (m > 0) out += ';';
        for (std::size_t j = 0; j < p.committees[m].size(); ++j) {
            const auto& a = p.committees[m][j];
            out += fmt::format("{}{}{}", j > 0 ? " " : "", a.hidden_units(),
                               a.activation() == ActivationKind::Linear ? "lin" : "log");
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    }
    out << contents;
    out.close();
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

void prepare_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
    }
    const auto probe = dir / ".cmsim-write-probe";
    {
        std::ofstream out(probe, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("output directory '{}' is not writable", dir.string()));
        }
    }
    std::filesystem::remove(probe, ec);
}

}  // namespace

std::size_t ReportFile::line_count() const noexcept {
    return static_cast<std::size_t>(std::count(contents.begin(), contents.end(), '\n'));
}

std::vector<ReportFile> render_reports(const RunOutput& output) {
    const auto& cfg = output.config;
    std::vector<ReportFile> files;

    std::string networth = "day,player,net_worth\n";
    for (const auto& r : output.metrics.networth) {
        networth += fmt::format("{},{},{:.6f}\n", r.day, r.player, r.net_worth);
    }
    files.push_back({"networth.csv", std::move(networth)});

    std::string complexity = "generation,day,linear_sigma,logistic_sigma\n";
    for (const auto& r : output.metrics.complexity) {
        complexity += fmt::format("{},{},{},{}\n", r.generation, r.day,
                                  optional_number(r.sigma.linear), optional_number(r.sigma.logistic));
    }
    files.push_back({"complexity.csv", std::move(complexity)});

    std::string hidden = "generation,day,player,mean_hidden_units\n";
    for (const auto& r : output.metrics.hidden_units) {
        hidden += fmt::format("{},{},{},{:.10g}\n", r.generation, r.day, r.player, r.mean_hidden_units);
    }
    files.push_back({"hidden_units.csv", std::move(hidden)});

    std::string trades = "day,round,buyer,seller,stock,quantity,price\n";
    for (const auto& [day, t] : output.trades) {
        trades += fmt::format("{},{},{},{},{},{},{}\n", day, t.round, t.buyer, t.seller,
                              cfg.stocks.at(t.stock), t.quantity, t.price);
    }
    files.push_back({"trades.csv", std::move(trades)});

    std::string final_state = "player,cash";
    for (const auto& s : cfg.stocks) final_state += "," + s;
    final_state += ",net_worth,mean_hidden_units,agents\n";
    for (const auto& p : output.final_players) {
        final_state += fmt::format("{},{:.6f}", p.id, p.cash);
        for (const auto h : p.holdings) final_state += fmt::format(",{}", h);
        final_state += fmt::format(",{:.6f},{:.10g},{}\n", net_worth(p, output.final_prices),
                                   mean_hidden_units(p), agent_summary(p));
    }
    files.push_back({"final_state.csv", std::move(final_state)});

    files.push_back({"config.resolved", cfg.resolved()});
    return files;
}

ReportFile render_manifest(const std::vector<ReportFile>& files) {
    std::string text = "file,lines\n";
    for (const auto& f : files) {
        text += fmt::format("{},{}\n", f.name, f.line_count());
    }
    return {"manifest", std::move(text)};
}

void write_report_files(const std::vector<ReportFile>& files, const std::filesystem::path& dir) {
    prepare_directory(dir);
    auto all = files;
    all.push_back(render_manifest(files));

    std::vector<std::filesystem::path> staged;
    try {
        for (const auto& f : all) {
            staged.push_back(dir / (f.name + ".tmp"));
            write_file(staged.back(), f.contents);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& s : staged) std::filesystem::remove(s, ec);
        throw;
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::error_code ec;
        std::filesystem::rename(staged[i], dir / all[i].name, ec);
        if (ec) {
            throw IoError(fmt::format("cannot move '{}' into place: {}", all[i].name, ec.message()));
        }
    }
}

void emit_reports(const RunOutput& output, const std::filesystem::path& dir) {
    write_report_files(render_reports(output), dir);
}

void write_abort_manifest(const std::filesystem::path& dir, const std::string& error_class,
                          const std::string& message) {
    prepare_directory(dir);
    const auto staged = dir / "manifest.tmp";
    write_file(staged, fmt::format("file,lines\n# aborted: {}: {}\n", error_class, message));
    std::filesystem::rename(staged, dir / "manifest");
}

}  // namespace cmsim
