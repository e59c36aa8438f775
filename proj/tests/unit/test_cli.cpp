#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "curvipat/cli/commands.hpp"
#include "curvipat/cli/config.hpp"
#include "curvipat/cli/output.hpp"
#include "curvipat/error.hpp"

using namespace curvipat;
using namespace curvipat::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Io;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("curvipat_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, ParsesKeyValueLines) {
    const auto s = parse_settings("# comment\nmodel = dib-sphere\n\n  m=12 # trailing\nparams.zeta2 = 9.5\n");
    EXPECT_EQ(s.at("model"), "dib-sphere");
    EXPECT_EQ(s.at("m"), "12");
    const auto cfg = make_config(s);
    EXPECT_EQ(cfg.spec.name, ModelName::DibSphere);
    EXPECT_EQ(cfg.m, 12u);
    EXPECT_EQ(cfg.spec.param("zeta2"), 9.5);
    EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{100, 50}));
}

TEST(Config, AssignmentsOverride) {
    auto s = parse_settings("m = 5\nn_rho = 10\n");
    apply_assignment(s, "m=7");
    apply_assignment(s, " n_theta = 12 ");
    const auto cfg = make_config(s);
    EXPECT_EQ(cfg.spec.name, ModelName::BvamDisk);
    EXPECT_EQ(cfg.m, 7u);
    EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{10, 12}));
}

TEST(Config, RejectsBadInput) {
    EXPECT_EQ(kind_of([] { (void)parse_settings("no equals sign\n"); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"bogus", "1"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"model", "gray-scott"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"m", "-3"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"m", "0"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"t_star", "nan"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"n_rho", "1"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"n_z", "4"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"method", "rk4"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"converge.m_list", "10,5"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"converge.m_list", "5,10"}, {"converge.m_ref", "20"}}); }),
              ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"props.lambda", "-2"}}); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { (void)make_config({{"props.n", "2"}}); }), ErrorKind::Usage);
    EXPECT_THROW((void)make_config({{"model", "dib-sphere"}, {"params.eta4", "1"}}), Error);
    Settings s;
    EXPECT_EQ(kind_of([&] { apply_assignment(s, "novalue"); }), ErrorKind::Usage);
}

TEST(Config, ConvergeDefaults) {
    const auto cfg = make_config({{"converge.m_list", "10, 20,40"}});
    EXPECT_EQ(cfg.m_list, (std::vector<std::size_t>{10, 20, 40}));
    EXPECT_EQ(cfg.m_ref, 160u);
}

TEST(Output, ColormapEndsAndIndex) {
    const auto& c = colormap();
    EXPECT_EQ(c[0], (Rgb{68, 1, 84}));
    EXPECT_EQ(c[255], (Rgb{253, 231, 37}));
    EXPECT_EQ(color_index(0.0, 0.0, 1.0), 0);
    EXPECT_EQ(color_index(1.0, 0.0, 1.0), 255);
    EXPECT_EQ(color_index(2.0, 0.0, 1.0), 255);
    EXPECT_EQ(color_index(0.5, 1.0, 1.0), 0);
}

TEST(Output, HeatmapExtremaUseTableEnds) {
    const fs::path dir = scratch("heatmap");
    fs::create_directories(dir);
    Field W({3, 2});
    W(1, 0) = -4.0;
    W(2, 1) = 6.0;
    write_heatmap(dir / "h.ppm", W);
    const std::string data = slurp(dir / "h.ppm");
    const std::string header = "P6\n3 2\n255\n";
    ASSERT_EQ(data.size(), header.size() + 18);
    EXPECT_EQ(data.substr(0, header.size()), header);
    auto pixel = [&](std::size_t i, std::size_t j) {
        const std::size_t o = header.size() + 3 * (j * 3 + i);
        return Rgb{static_cast<std::uint8_t>(data[o]), static_cast<std::uint8_t>(data[o + 1]),
                   static_cast<std::uint8_t>(data[o + 2])};
    };
    EXPECT_EQ(pixel(1, 0), colormap()[0]);
    EXPECT_EQ(pixel(2, 1), colormap()[255]);
    fs::remove_all(dir);
}

TEST(Output, SnapshotLayout) {
    const fs::path dir = scratch("snapshot");
    fs::create_directories(dir);
    const auto d = make_disk(2, 3);
    Field W(d->dims);
    W(1, 2) = 0.1;
    write_snapshot(dir / "u.csv", *d, "u", 4, 0.5, W);
    std::istringstream in(slurp(dir / "u.csv"));
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line))
        if (!line.starts_with('#')) rows.push_back(line);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_TRUE(rows.front().starts_with("1,1,"));
    EXPECT_TRUE(rows.back().starts_with("2,3,"));
    EXPECT_TRUE(rows.back().ends_with(",0.10000000000000001"));
    EXPECT_THROW(write_snapshot(dir / "bad.csv", *d, "u", 0, 0.0, Field({3, 2})), Error);
    fs::remove_all(dir);
}

TEST(Commands, RunIsDeterministicAndCountsRows) {
    Settings s{{"model", "bvam-disk"}, {"n_rho", "6"},  {"n_theta", "8"},
               {"m", "7"},             {"t_star", "1"}, {"snapshot_every", "3"},
               {"heatmap", "true"}};
    std::vector<std::string> outputs;
    for (int rep = 0; rep < 2; ++rep) {
        const fs::path dir = scratch("run" + std::to_string(rep));
        s["output_dir"] = dir.string();
        std::ostringstream log;
        const auto report = cmd_run(make_config(s), log);
        EXPECT_FALSE(report.diverged);
        std::string all;
        for (const auto& p : report.manifest) all += p.filename().string() + slurp(p);
        outputs.push_back(all);

        std::istringstream ts(slurp(dir / "timeseries.csv"));
        std::string line;
        std::getline(ts, line);
        EXPECT_EQ(line, "t,mean_u,mean_v");
        std::size_t rows = 0;
        while (std::getline(ts, line)) ++rows;
        EXPECT_EQ(rows, 7u / 3u + 1u);
        EXPECT_TRUE(fs::exists(dir / "snapshots" / "u_0.csv"));
        EXPECT_TRUE(fs::exists(dir / "snapshots" / "v_6.ppm"));
        fs::remove_all(dir);
    }
    EXPECT_EQ(outputs[0], outputs[1]);
}

TEST(Commands, SingleStepWritesTwoRows) {
    const fs::path dir = scratch("single");
    std::ostringstream log;
    (void)cmd_run(make_config({{"n_rho", "5"}, {"n_theta", "6"}, {"m", "1"}, {"output_dir", dir.string()}}),
                  log);
    std::istringstream ts(slurp(dir / "timeseries.csv"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(ts, line)) ++lines;
    EXPECT_EQ(lines, 3u);
    fs::remove_all(dir);
}

TEST(Commands, ErrorHelpers) {
    const Field a({2, 2}, 1.0), b({2, 2}, 2.0), z({2, 2}, 0.0);
    EXPECT_DOUBLE_EQ(relative_error(std::vector{a}, std::vector{b}), 0.5);
    EXPECT_DOUBLE_EQ(relative_error(std::vector{a, a}, std::vector{b, b}), std::sqrt(0.5));
    EXPECT_DOUBLE_EQ(relative_error(std::vector{a}, std::vector{z}), 2.0);
    const std::vector<double> x{10, 20, 40}, y{1.0, 0.5, 0.25};
    EXPECT_NEAR(loglog_slope(x, y), -1.0, 1e-14);
    EXPECT_THROW((void)loglog_slope(std::vector<double>{1}, std::vector<double>{1}), Error);
}

TEST(Commands, ConvergeFirstOrderOnSmallDisk) {
    auto cfg = make_config({{"n_rho", "6"}, {"n_theta", "8"}, {"t_star", "1"},
                            {"converge.m_list", "20,40,80"}, {"converge.dense", "true"},
                            {"converge.forward_euler", "true"}});
    std::ostringstream log;
    const auto r = cmd_converge(cfg, log);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_EQ(r.m_ref, 320u);
    EXPECT_GT(r.order, 0.8);
    EXPECT_LT(r.order, 1.3);
    EXPECT_FALSE(r.dense_skipped);
    for (const auto& row : r.rows) {
        EXPECT_TRUE(row.err_dense.has_value());
        EXPECT_TRUE(row.err_forward_euler.has_value());
    }
}

TEST(Commands, PropsClosedForms) {
    const auto r2 = operator_properties(OperatorKind::Rho2, 16);
    ASSERT_TRUE(r2.closed_form.has_value());
    EXPECT_NEAR(r2.xi_inv_norm, *r2.closed_form, 1e-8 * *r2.closed_form);
    EXPECT_LE(r2.max_eigenvalue, 1e-10);
    EXPECT_LE(r2.max_row_sum, 1e-10);
    const auto z = operator_properties(OperatorKind::Z, 32);
    EXPECT_NEAR(z.xi_cond, std::sqrt(2.0), 1e-10);
    ASSERT_TRUE(z.exp_min.has_value());
    EXPECT_GE(*z.exp_min, 0.0);
}
