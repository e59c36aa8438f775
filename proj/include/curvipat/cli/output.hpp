#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "curvipat/integrators.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat::cli {

/// Appends `t,mean_<comp>...` rows, flushing each one so partial output
/// survives an aborted run.
class TimeSeriesWriter {
public:
    TimeSeriesWriter(const std::filesystem::path& path, std::span<const std::string> components);
    void row(double t, std::span<const double> means);

private:
    std::ofstream out_;
};

/// Writes one field as `#` header lines (geometry, dims, grid vectors)
/// followed by rows `i,j[,k],coord...,value` in flat-index order, 1-based indices.
void write_snapshot(const std::filesystem::path& path, const Discretization& d,
                    const std::string& component, std::size_t step, double t, const Field& W);

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed 256-entry viridis-like colour table.
[[nodiscard]] const std::array<Rgb, 256>& colormap();

/// Colour index of v on [lo, hi]; a degenerate range maps to 0.
[[nodiscard]] std::uint8_t color_index(double v, double lo, double hi) noexcept;

/// Binary PPM (P6) of an order-2 field: rows are the second index, columns the
/// first. Order-3 fields are rendered through their middle slice in the
/// third index.
void write_heatmap(const std::filesystem::path& path, const Field& W);

/// `%.17g`, locale independent.
[[nodiscard]] std::string format_real(double v);

}  // namespace curvipat::cli
