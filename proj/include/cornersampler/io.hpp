#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cornersampler/reconstruct.hpp"

namespace cornersampler {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

struct FarFieldFile {
  FarFieldVector data;
  double k = 0.0;
};

// "# fffile v1 N=<N> k=<k>" then N lines "theta,re,im".
void write_fffile(std::ostream &os, const FarFieldVector &u, double k);
FarFieldFile read_fffile(std::istream &is);
void write_fffile(const std::filesystem::path &path, const FarFieldVector &u, double k);
FarFieldFile read_fffile(const std::filesystem::path &path);

/// u + delta * rms(u) * xi with xi_i complex Gaussian of unit variance
/// (independent real and imaginary parts of variance 1/2). rms(u) =
/// ||u|| / sqrt(2 pi), so the relative perturbation is about delta.
FarFieldVector add_noise(const FarFieldVector &u, double delta, std::uint64_t seed);

/// "cx,cy,rho,W,cutoff,status".
std::string indicator_csv(const IndicatorMap &map);
/// "j,lambda_j,coeff_sq_j,ratio_j", j from 1.
std::string spectrum_csv(const PicardData &p);
/// Plain P2 image, 255 inside the mask, row 0 at the top (y = +R).
std::string mask_pgm(const SupportEstimate &est);
/// "x,y,inside" per pixel centre.
std::string mask_csv(const SupportEstimate &est);

nlohmann::json disks_json(const std::vector<TestDisk> &disks);
/// Parses "cx,cy,rho".
TestDisk parse_disk(const std::string &text);

} // namespace cornersampler
