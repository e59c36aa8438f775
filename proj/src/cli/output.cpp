#include "curvipat/cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "curvipat/error.hpp"

namespace curvipat::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

std::vector<std::span<const double>> axis_grids(const Discretization& d) {
    switch (d.geometry) {
        case Geometry::Disk: return {d.rho->grid, d.theta->grid};
        case Geometry::Sphere: return {d.theta->grid, d.phi->grid};
        case Geometry::Ball: return {d.rho->grid, d.theta->grid, d.phi->grid};
        case Geometry::Cylinder: return {d.rho->grid, d.theta->grid, d.z->grid};
    }
    return {};
}

std::vector<const char*> axis_names(Geometry g) {
    switch (g) {
        case Geometry::Disk: return {"rho", "theta"};
        case Geometry::Sphere: return {"theta", "phi"};
        case Geometry::Ball: return {"rho", "theta", "phi"};
        case Geometry::Cylinder: return {"rho", "theta", "z"};
    }
    return {};
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, p);
}

TimeSeriesWriter::TimeSeriesWriter(const std::filesystem::path& path,
                                   std::span<const std::string> components)
    : out_(open_out(path)) {
    out_ << 't';
    for (const auto& c : components) out_ << ",mean_" << c;
    out_ << '\n';
    out_.flush();
}

void TimeSeriesWriter::row(double t, std::span<const double> means) {
    out_ << format_real(t);
    for (double m : means) out_ << ',' << format_real(m);
    out_ << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorKind::Io, "time series write failed");
}

void write_snapshot(const std::filesystem::path& path, const Discretization& d,
                    const std::string& component, std::size_t step, double t, const Field& W) {
    if (!W.same_shape(d.zeros())) throw Error(ErrorKind::Shape, "write_snapshot: shape mismatch");
    auto out = open_out(path);
    const auto grids = axis_grids(d);
    const auto names = axis_names(d.geometry);
    out << "# geometry " << to_string(d.geometry) << '\n';
    out << "# component " << component << '\n';
    out << "# step " << step << '\n';
    out << "# t " << format_real(t) << '\n';
    out << "# dims";
    for (std::size_t n : d.dims) out << ' ' << n;
    out << '\n';
    for (std::size_t a = 0; a < grids.size(); ++a) {
        out << "# grid " << names[a];
        for (double x : grids[a]) out << ' ' << format_real(x);
        out << '\n';
    }
    static constexpr const char* kIdx[] = {"i", "j", "k"};
    out << '#';
    for (std::size_t a = 0; a < grids.size(); ++a) out << (a ? "," : " ") << kIdx[a];
    for (const char* n : names) out << ',' << n;
    out << ",value\n";

    const std::size_t n1 = W.dim(0), n2 = W.dim(1), n3 = W.dim(2);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n1; ++i) {
                out << i + 1 << ',' << j + 1;
                if (W.order() == 3) out << ',' << k + 1;
                out << ',' << format_real(grids[0][i]) << ',' << format_real(grids[1][j]);
                if (W.order() == 3) out << ',' << format_real(grids[2][k]);
                out << ',' << format_real(W(i, j, k)) << '\n';
            }
    if (!out) throw Error(ErrorKind::Io, "snapshot write failed: " + path.string());
}

const std::array<Rgb, 256>& colormap() {
    // Viridis samples at 0, 1/8, ..., 1, linearly interpolated.
    static const std::array<Rgb, 256> table = [] {
        constexpr double anchors[9][3] = {{68, 1, 84},    {71, 44, 122},  {59, 81, 139},
                                          {44, 113, 142}, {33, 144, 141}, {39, 173, 129},
                                          {92, 200, 99},  {170, 220, 50}, {253, 231, 37}};
        std::array<Rgb, 256> t{};
        for (std::size_t i = 0; i < 256; ++i) {
            const double x = static_cast<double>(i) / 255.0 * 8.0;
            const std::size_t a = std::min<std::size_t>(static_cast<std::size_t>(x), 7);
            const double f = x - static_cast<double>(a);
            for (std::size_t c = 0; c < 3; ++c)
                t[i][c] = static_cast<std::uint8_t>(
                    std::lround(anchors[a][c] + f * (anchors[a + 1][c] - anchors[a][c])));
        }
        return t;
    }();
    return table;
}

std::uint8_t color_index(double v, double lo, double hi) noexcept {
    if (!(hi > lo) || !std::isfinite(v)) return 0;
    const double x = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(x * 255.0));
}

void write_heatmap(const std::filesystem::path& path, const Field& W) {
    const std::size_t n1 = W.dim(0), n2 = W.dim(1);
    const std::size_t k = W.order() == 3 ? W.dim(2) / 2 : 0;
    double lo = W(0, 0, k), hi = lo;
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i) {
            lo = std::min(lo, W(i, j, k));
            hi = std::max(hi, W(i, j, k));
        }
    auto out = open_out(path, std::ios::out | std::ios::binary);
    out << "P6\n" << n1 << ' ' << n2 << "\n255\n";
    const auto& cmap = colormap();
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i) {
            const Rgb& c = cmap[color_index(W(i, j, k), lo, hi)];
            out.write(reinterpret_cast<const char*>(c.data()), 3);
        }
    if (!out) throw Error(ErrorKind::Io, "heatmap write failed: " + path.string());
}

}  // namespace curvipat::cli
