#include "rmlab/lab/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmlab/error.hpp"

namespace rmlab::lab {

std::string histogram_csv(const Esd& esd, int bins) {
  if (esd.empty()) raise(ErrorKind::Contract, "histogram of an empty ESD");
  if (bins < 10) raise(ErrorKind::Parameter, "histograms need at least 10 bins");
  const auto support = esd.support();
  double lo = support.front();
  double hi = support.back();
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : support) {
    auto b = static_cast<std::size_t>(std::floor((x - lo) / width));
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
  }
  const double n = static_cast<double>(esd.size());
  std::ostringstream os;
  os.precision(17);
  os << "bin_left,bin_right,count,density\n";
  for (int b = 0; b < bins; ++b) {
    const double left = lo + b * width;
    const double right = b + 1 == bins ? hi : lo + (b + 1) * width;
    const auto c = counts[static_cast<std::size_t>(b)];
    os << left << ',' << right << ',' << c << ',' << static_cast<double>(c) / (n * width) << '\n';
  }
  return os.str();
}

void emit_histogram(const Esd& esd, int bins, const std::string& path) {
  write_text(path, histogram_csv(esd, bins));
}

std::string grid_csv(const DensityGrid& grid) {
  std::ostringstream os;
  os.precision(17);
  os << "x,pdf,cdf\n";
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    os << grid.x[i] << ',' << grid.pdf[i] << ',' << grid.cdf[i] << '\n';
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

nlohmann::json read_json(const std::string& path) {
  const auto text = read_text(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::Config, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace rmlab::lab
