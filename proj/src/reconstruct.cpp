#include "cornersampler/reconstruct.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cornersampler/medium.hpp"

namespace cornersampler {

std::string to_string(DiskStatus s) {
  switch (s) {
  case DiskStatus::Ok: return "ok";
  case DiskStatus::SolveFailed: return "solve_failed";
  case DiskStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

std::vector<Vec2> grid_centers(const CenterGrid &g, double R) {
  std::vector<Vec2> out;
  if (g.n <= 0)
    return out;
  const double a = g.extent * R;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double tx = g.n == 1 ? 0.0 : -a + 2.0 * a * ix / (g.n - 1);
      const double ty = g.n == 1 ? 0.0 : -a + 2.0 * a * iy / (g.n - 1);
      out.emplace_back(tx, ty);
    }
  return out;
}

} // namespace

std::vector<TestDisk> enumerate_disks(const TestDiskFamily &family, double R) {
  std::vector<TestDisk> out;
  if (const auto *f = std::get_if<FixedRadiusGrid>(&family)) {
    for (const Vec2 &c : grid_centers(f->centers, R))
      out.push_back({c, f->rho * R});
  } else {
    const auto &s = std::get<RadiusSweep>(family);
    for (const Vec2 &c : grid_centers(s.centers, R))
      for (double r : s.radii)
        out.push_back({c, r * R});
  }
  return out;
}

PicardData disk_indicator(const Medium &med, const FarFieldVector &u_inf, const TestDisk &disk,
                          const SweepOptions &opts) {
  const FarFieldVector u = resample(u_inf, opts.N);
  const FarFieldOperatorMatrix F0 = background_far_field_operator(med, opts.N, opts.M);
  const FarFieldOperatorMatrix Fo = obstacle_far_field_operator(med, disk, opts.N, opts.M, opts.cache);
  return picard_indicator(u, eigensystem(f_sharp(F0, Fo, med.k)), opts.eps_rel);
}

IndicatorMap indicator_map(const Medium &med, const FarFieldVector &u_inf,
                           const std::vector<TestDisk> &disks, const SweepOptions &opts) {
  check_grid(opts.N, opts.M);
  IndicatorMap map;
  std::vector<TestDisk> admissible;
  for (const TestDisk &d : disks) {
    const auto rep = check_admissible(med, d, opts.M);
    if (rep.ok())
      admissible.push_back(d);
    else
      map.skipped.push_back({d, rep.message});
  }

  const FarFieldVector u = resample(u_inf, opts.N);
  const FarFieldOperatorMatrix F0 = background_far_field_operator(med, opts.N, opts.M);

  map.records.resize(admissible.size());
  auto work = [&](std::size_t i) {
    IndicatorRecord &rec = map.records[i];
    rec.disk = admissible[i];
    try {
      const auto Fo = obstacle_far_field_operator(med, rec.disk, opts.N, opts.M, opts.cache);
      const EigenSystem eig = eigensystem(f_sharp(F0, Fo, med.k));
      try {
        const PicardData p = picard_indicator(u, eig, opts.eps_rel);
        rec.W = p.W;
        rec.cutoff = p.cutoff_index;
      } catch (const DomainError &e) {
        rec.status = DiskStatus::Degenerate;
        rec.detail = e.what();
      }
    } catch (const Error &e) {
      rec.status = DiskStatus::SolveFailed;
      rec.detail = e.what();
    }
  };

  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(admissible.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < admissible.size(); ++i)
      work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < admissible.size(); i = next++)
          work(i);
      });
    for (auto &th : pool)
      th.join();
  }

  std::stable_sort(map.records.begin(), map.records.end(),
                   [](const IndicatorRecord &a, const IndicatorRecord &b) {
                     const auto ka = std::make_tuple(a.disk.center.x(), a.disk.center.y(), a.disk.radius);
                     const auto kb = std::make_tuple(b.disk.center.x(), b.disk.center.y(), b.disk.radius);
                     return ka < kb;
                   });
  return map;
}

std::vector<bool> classify(const IndicatorMap &map, const ClassificationPolicy &policy) {
  const IndicatorRecord *ref = nullptr;
  for (const auto &r : map.records)
    if (r.disk == policy.reference && r.status == DiskStatus::Ok) {
      ref = &r;
      break;
    }
  if (!ref)
    throw Error("classify: indicator map has no evaluated reference disk");
  std::vector<bool> out(map.records.size(), false);
  for (std::size_t i = 0; i < map.records.size(); ++i) {
    const auto &r = map.records[i];
    out[i] = r.status == DiskStatus::Ok && r.W <= policy.tau * ref->W;
  }
  return out;
}

std::size_t SupportEstimate::count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

SupportEstimate support_estimate(const std::vector<TestDisk> &contained, double R, int resolution) {
  if (contained.empty())
    throw Error("support_estimate: no test disk classified as containing the support");
  if (resolution <= 0)
    throw DomainError("support_estimate: resolution must be positive");
  SupportEstimate est;
  est.R = R;
  est.resolution = resolution;
  est.contained = contained;
  est.mask.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  for (int row = 0; row < resolution; ++row)
    for (int col = 0; col < resolution; ++col) {
      const Vec2 p = est.pixel_center(row, col);
      bool inside = true;
      for (const TestDisk &d : contained)
        if ((p - d.center).norm() > d.radius) {
          inside = false;
          break;
        }
      est.mask[static_cast<std::size_t>(row) * resolution + col] = inside ? 1 : 0;
    }
  return est;
}

double jaccard(const SupportEstimate &est, const Polygon &truth) {
  std::size_t both = 0, either = 0;
  for (int row = 0; row < est.resolution; ++row)
    for (int col = 0; col < est.resolution; ++col) {
      const bool a = est.at(row, col);
      const bool b = truth.contains(est.pixel_center(row, col));
      both += (a && b);
      either += (a || b);
    }
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

double support_excess(const SupportEstimate &est, const Polygon &truth) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const TestDisk &d : est.contained)
    for (const Vec2 &v : truth.vertices())
      worst = std::max(worst, (v - d.center).norm() - d.radius);
  return worst;
}

double lens_area(const TestDisk &a, const TestDisk &b) {
  const double d = (a.center - b.center).norm();
  const double r1 = a.radius, r2 = b.radius;
  if (d >= r1 + r2)
    return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double a1 = std::acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1));
  const double a2 = std::acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2));
  return r1 * r1 * (a1 - std::sin(2 * a1) / 2) + r2 * r2 * (a2 - std::sin(2 * a2) / 2);
}

} // namespace cornersampler
