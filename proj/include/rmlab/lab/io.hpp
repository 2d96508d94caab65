#pragma once

#include <string>

#include <json.hpp>

#include "rmlab/limit_laws.hpp"
#include "rmlab/spectra.hpp"

namespace rmlab::lab {

/// Equal-width histogram over the ESD's support, last bin closed. Header
/// `bin_left,bin_right,count,density` with density = count / (n * width).
/// bins >= 10; an empty ESD is a contract error.
std::string histogram_csv(const Esd& esd, int bins);
void emit_histogram(const Esd& esd, int bins, const std::string& path);

/// Header `x,pdf,cdf`.
std::string grid_csv(const DensityGrid& grid);

/// Write or read a whole file; failures are I/O errors naming the path.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace rmlab::lab
