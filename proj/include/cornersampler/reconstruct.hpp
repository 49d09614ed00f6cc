#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cornersampler/cache.hpp"
#include "cornersampler/factorization.hpp"
#include "cornersampler/geometry.hpp"
#include "cornersampler/obstacle.hpp"

namespace cornersampler {

/// n x n centres on [-extent R, extent R]^2.
struct CenterGrid {
  int n = 24;
  double extent = 0.6;
};

struct FixedRadiusGrid {
  CenterGrid centers;
  double rho = 0.45; // in units of R
};

struct RadiusSweep {
  CenterGrid centers;
  std::vector<double> radii; // in units of R
};

using TestDiskFamily = std::variant<FixedRadiusGrid, RadiusSweep>;

/// Every disk of the family in grid order (row-major in y, then x, then radius).
std::vector<TestDisk> enumerate_disks(const TestDiskFamily &family, double R);

enum class DiskStatus { Ok, SolveFailed, Degenerate };
std::string to_string(DiskStatus s);

struct IndicatorRecord {
  TestDisk disk;
  double W = 0.0;
  int cutoff = 0;
  DiskStatus status = DiskStatus::Ok;
  std::string detail;
};

struct SkippedDisk {
  TestDisk disk;
  std::string reason;
};

struct IndicatorMap {
  std::vector<IndicatorRecord> records; // one per admissible disk
  std::vector<SkippedDisk> skipped;     // inadmissible disks, not evaluated
};

struct SweepOptions {
  int N = 64;
  int M = 30;
  double eps_rel = kDefaultEpsRel;
  int threads = 1;
  OperatorCache *cache = nullptr;
};

/// Full per-disk pipeline: F_Omega, F#, eigensystem, W. Per-disk failures
/// land in the record status; the sweep continues. Records are sorted by
/// (cx, cy, rho).
IndicatorMap indicator_map(const Medium &med, const FarFieldVector &u_inf,
                           const std::vector<TestDisk> &disks, const SweepOptions &opts);

/// W and the Picard terms for a single disk.
PicardData disk_indicator(const Medium &med, const FarFieldVector &u_inf, const TestDisk &disk,
                          const SweepOptions &opts);

struct ClassificationPolicy {
  TestDisk reference{Vec2::Zero(), 0.95};
  double tau = 10.0;
};

/// Default reference: centred disk of radius 0.95 R.
inline TestDisk default_reference_disk(double R) { return {Vec2::Zero(), 0.95 * R}; }

/// contained[i] iff record i is Ok and W_i <= tau W_ref. Throws if the map has
/// no Ok record for the reference disk.
std::vector<bool> classify(const IndicatorMap &map, const ClassificationPolicy &policy);

struct SupportEstimate {
  double R = 1.0;
  int resolution = 0; // pixels per side over [-R, R]^2
  std::vector<unsigned char> mask; // row-major, row 0 at y = -R
  std::vector<TestDisk> contained;

  double pixel_size() const { return 2.0 * R / resolution; }
  Vec2 pixel_center(int row, int col) const {
    const double h = pixel_size();
    return {-R + (col + 0.5) * h, -R + (row + 0.5) * h};
  }
  bool at(int row, int col) const { return mask[static_cast<std::size_t>(row) * resolution + col] != 0; }
  std::size_t count() const;
  double area() const { return static_cast<double>(count()) * pixel_size() * pixel_size(); }
};

/// Pixel-wise intersection of the contained disks (pixel centres tested).
SupportEstimate support_estimate(const std::vector<TestDisk> &contained, double R, int resolution);

/// |mask & D| / |mask | D| with D rasterised on the same pixel centres.
double jaccard(const SupportEstimate &est, const Polygon &truth);

/// max over contained disks and polygon vertices of |v - c| - rho; the
/// estimate contains D up to one pixel iff this is <= pixel_size().
double support_excess(const SupportEstimate &est, const Polygon &truth);

/// Area of the intersection of two disks.
double lens_area(const TestDisk &a, const TestDisk &b);

} // namespace cornersampler
