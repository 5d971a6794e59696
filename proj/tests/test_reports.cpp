#include "cmsim/reports.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cmsim/errors.hpp"

using namespace cmsim;
namespace fs = std::filesystem;

namespace {

RunOutput small_run(std::size_t days) {
    const auto cfg = parse_config("players = 3\nagents_per_stock = 2\nwindow = 20\nepochs = 40\n"
                                  "cadence = 10\nseed = 21\n",
                                  {{"days", std::to_string(days)}});
    return run_simulation(cfg);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class ReportDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("cmsim_reports_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

}  // namespace

TEST(Reports, SixFilesWithHeaders) {
    const auto files = render_reports(small_run(25));
    ASSERT_EQ(files.size(), 6u);
    EXPECT_EQ(files[0].name, "networth.csv");
    EXPECT_EQ(files[1].name, "complexity.csv");
    EXPECT_EQ(files[2].name, "hidden_units.csv");
    EXPECT_EQ(files[3].name, "trades.csv");
    EXPECT_EQ(files[4].name, "final_state.csv");
    EXPECT_EQ(files[5].name, "config.resolved");
    EXPECT_EQ(files[0].line_count(), 1 + 25 * 3u);
    EXPECT_EQ(files[1].line_count(), 1 + 3u);
    EXPECT_EQ(files[2].line_count(), 1 + 3 * 3u);
    EXPECT_EQ(files[4].line_count(), 1 + 3u);
    EXPECT_EQ(files[4].contents.substr(0, files[4].contents.find('\n')),
              "player,cash,DJIA,NASDAQ,SP500,net_worth,mean_hidden_units,agents");
}

TEST(Reports, ZeroDaysHeadersOnly) {
    const auto files = render_reports(small_run(0));
    for (const auto& f : files) {
        if (f.name == "config.resolved") continue;
        EXPECT_EQ(f.line_count(), 1u) << f.name;
    }
}

TEST_F(ReportDir, ManifestMatchesFiles) {
    const auto out = small_run(15);
    emit_reports(out, dir);
    const auto manifest = slurp(dir / "manifest");
    std::istringstream in(manifest);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "file,lines");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const auto name = line.substr(0, comma);
        const auto lines = std::stoul(line.substr(comma + 1));
        ASSERT_TRUE(fs::exists(dir / name)) << name;
        EXPECT_EQ(count_lines(slurp(dir / name)), lines) << name;
        ++rows;
    }
    EXPECT_EQ(rows, 6u);
}

TEST_F(ReportDir, RerunReplacesFiles) {
    emit_reports(small_run(15), dir);
    const auto first = slurp(dir / "networth.csv");
    emit_reports(small_run(12), dir);
    const auto second = slurp(dir / "networth.csv");
    EXPECT_NE(first, second);
    EXPECT_EQ(count_lines(second), 1 + 12 * 3u);
    for (const auto& entry : fs::directory_iterator(dir)) {
        EXPECT_NE(entry.path().extension(), ".tmp") << entry.path();
    }
}

TEST_F(ReportDir, SameRunSameBytes) {
    emit_reports(small_run(20), dir / "a");
    emit_reports(small_run(20), dir / "b");
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename()))
            << entry.path().filename();
    }
}

TEST_F(ReportDir, UnwritableDestination) {
    fs::create_directories(dir);
    {
        std::ofstream blocker(dir / "file");
        blocker << "x";
    }
    EXPECT_THROW(emit_reports(small_run(5), dir / "file" / "sub"), IoError);
}

TEST_F(ReportDir, AbortManifest) {
    write_abort_manifest(dir, "LoadError.MissingFile", "no such file");
    const auto text = slurp(dir / "manifest");
    EXPECT_EQ(text.rfind("file,lines\n", 0), 0u);
    EXPECT_NE(text.find("LoadError.MissingFile"), std::string::npos);
}
