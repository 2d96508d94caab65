#include "rmlab/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "rmlab/error.hpp"

namespace rmlab {

double Spectrum::kth_largest(std::size_t k) const {
  if (k < 1 || k > eigenvalues.size()) raise(ErrorKind::Dimension, "kth_largest: k out of range");
  return eigenvalues[k - 1];
}

double Spectrum::spectral_norm() const {
  if (eigenvalues.empty()) return 0.0;
  return std::max(eigenvalues.front(), -eigenvalues.back());
}

Esd::Esd(std::span<const double> raw, Normalization normalization)
    : normalization_(normalization) {
  if (!(normalization.scale > 0.0) || !std::isfinite(normalization.scale)) {
    raise(ErrorKind::Parameter, "ESD normalization scale must be positive");
  }
  points_.reserve(raw.size());
  for (double x : raw) points_.push_back((x - normalization.shift) / normalization.scale);
  std::sort(points_.begin(), points_.end());
}

double Esd::cdf(double x) const {
  if (points_.empty()) return 0.0;
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

double Esd::cdf_left(double x) const {
  if (points_.empty()) return 0.0;
  const auto it = std::lower_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

std::vector<Esd::Atom> Esd::atoms(double tolerance) const {
  std::vector<Atom> out;
  for (double x : points_) {
    if (!out.empty() && x - out.back().x <= tolerance) {
      ++out.back().multiplicity;
    } else {
      out.push_back({x, 1});
    }
  }
  return out;
}

namespace {

void require_source(const Spectrum& s, SpectrumSource expected, const char* what) {
  if (s.source != expected) raise(ErrorKind::Contract, std::string(what) + ": wrong spectrum source");
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0)) raise(ErrorKind::Parameter, "sigma must be positive");
}

}  // namespace

Esd normalize_laplacian_spectrum(const Spectrum& s, std::size_t n, double mu, double sigma) {
  require_source(s, SpectrumSource::Laplacian, "normalize_laplacian_spectrum");
  require_sigma(sigma);
  const double nd = static_cast<double>(n);
  return Esd(s.eigenvalues, {nd * mu, std::sqrt(nd) * sigma});
}

Esd normalize_adjacency_spectrum(const Spectrum& s, std::size_t n, double mu, double sigma) {
  require_source(s, SpectrumSource::Adjacency, "normalize_adjacency_spectrum");
  require_sigma(sigma);
  return Esd(s.eigenvalues, {-mu, std::sqrt(static_cast<double>(n)) * sigma});
}

Esd normalize_dilute_adjacency(const Spectrum& s, std::size_t n, double p) {
  require_source(s, SpectrumSource::Adjacency, "normalize_dilute_adjacency");
  const double alpha = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  if (!(alpha > 0.0)) raise(ErrorKind::Parameter, "dilute normalization needs 0 < p < 1");
  return Esd(s.eigenvalues, {0.0, alpha});
}

Esd raw_esd(const Spectrum& s) { return Esd(s.eigenvalues, {}); }

}  // namespace rmlab
