#include "cornersampler/commands.hpp"

#include <algorithm>
#include <iostream>

#include "cornersampler/cache.hpp"
#include "cornersampler/validate.hpp"

namespace cornersampler {

namespace fs = std::filesystem;

FarFieldVector simulate_data(const RunConfig &cfg) {
  const auto &d = cfg.discretization;
  const FarFieldVector clean =
      radiate(cfg.medium, cfg.source, d.quad_order, d.effective_data_M(), d.effective_data_N());
  return add_noise(clean, cfg.noise.delta, cfg.noise.seed);
}

ReconstructionResult reconstruct(const RunConfig &cfg, const FarFieldVector &data, int threads,
                                 OperatorCache *cache) {
  ReconstructionResult res;
  const double R = cfg.medium.R;
  res.family = enumerate_disks(cfg.sampling.family, R);
  res.reference = cfg.reference_disk();

  std::vector<TestDisk> disks = res.family;
  const bool ref_in_family = std::find(disks.begin(), disks.end(), res.reference) != disks.end();
  if (!ref_in_family)
    disks.push_back(res.reference);

  SweepOptions opts;
  opts.N = cfg.discretization.N;
  opts.M = cfg.discretization.M;
  opts.eps_rel = cfg.eps_rel();
  opts.threads = threads;
  opts.cache = cache;
  res.map = indicator_map(cfg.medium, data, disks, opts);

  const auto is_ref = [&](const TestDisk &d) { return !ref_in_family && d == res.reference; };
  std::size_t admissible_family = 0;
  for (const auto &r : res.map.records)
    if (!is_ref(r.disk))
      ++admissible_family;
  if (admissible_family == 0)
    throw Error("empty admissible family");

  ClassificationPolicy policy{res.reference, cfg.sampling.tau};
  const std::vector<bool> contained = classify(res.map, policy);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < res.map.records.size(); ++i) {
    const auto &r = res.map.records[i];
    if (r.disk == res.reference && r.status == DiskStatus::Ok)
      res.W_ref = r.W;
    if (is_ref(r.disk))
      continue;
    if (r.status != DiskStatus::Ok)
      ++failed;
    if (contained[i])
      res.contained.push_back(r.disk);
  }
  // The reference record was appended only to anchor the threshold.
  if (!ref_in_family)
    std::erase_if(res.map.records, [&](const IndicatorRecord &r) { return is_ref(r.disk); });

  auto &m = res.metrics;
  m["disks_total"] = res.family.size();
  m["disks_evaluated"] = res.map.records.size();
  m["disks_skipped"] = res.map.skipped.size();
  m["disks_failed"] = failed;
  m["disks_contained"] = res.contained.size();
  m["W_ref"] = res.W_ref;
  m["reference"] = disks_json({res.reference})[0];
  m["tau"] = cfg.sampling.tau;
  m["eps_rel"] = opts.eps_rel;
  m["noise_delta"] = cfg.noise.delta;
  m["seed"] = cfg.noise.seed;
  m["N"] = opts.N;
  m["M"] = opts.M;

  if (!res.contained.empty())
    res.estimate = support_estimate(res.contained, R, cfg.sampling.mask_resolution);

  if (const auto truth = cfg.ground_truth()) {
    std::size_t geo_in = 0, geo_in_ok = 0, geo_out = 0, geo_out_ok = 0;
    for (std::size_t i = 0; i < res.map.records.size(); ++i) {
      const auto &r = res.map.records[i];
      if (r.status != DiskStatus::Ok)
        continue;
      const bool in = disk_contains_polygon(DiskD(r.disk.center, r.disk.radius), *truth);
      const bool cls = std::find(res.contained.begin(), res.contained.end(), r.disk) != res.contained.end();
      if (in) {
        ++geo_in;
        geo_in_ok += cls;
      } else {
        ++geo_out;
        geo_out_ok += !cls;
      }
    }
    m["disks_geometrically_containing"] = geo_in;
    m["containing_classified_contained"] = geo_in_ok;
    m["disks_excluding_support"] = geo_out;
    m["excluding_classified_not_contained"] = geo_out_ok;
    if (res.estimate) {
      const double excess = support_excess(*res.estimate, *truth);
      m["jaccard"] = jaccard(*res.estimate, *truth);
      m["support_excess"] = excess;
      m["pixel_size"] = res.estimate->pixel_size();
      m["truth_inside_mask"] = excess <= res.estimate->pixel_size();
      m["mask_area"] = res.estimate->area();
      m["truth_area"] = truth->area();
    }
  }
  return res;
}

namespace {

fs::path out_dir(const CommandOptions &opts, const RunConfig &cfg) {
  const fs::path dir = opts.out ? *opts.out : fs::path(cfg.paths.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path &path, const nlohmann::json &j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

RunConfig load(const CommandOptions &opts) {
  RunConfig cfg = load_config(*opts.config);
  if (opts.seed)
    cfg.noise.seed = *opts.seed;
  return cfg;
}

FarFieldVector load_data(const CommandOptions &opts, const RunConfig &cfg) {
  if (!opts.data)
    return simulate_data(cfg);
  const FarFieldFile f = read_fffile(*opts.data);
  if (std::abs(f.k - cfg.medium.k) > 1e-12 * cfg.medium.k)
    throw ConfigError("far-field file k=" + format_double(f.k) + " does not match medium.k");
  return f.data;
}

OperatorCache make_cache(const RunConfig &cfg) {
  if (auto dir = resolve_cache_dir(cfg))
    return OperatorCache(*dir);
  return OperatorCache();
}

TestDisk require_disk(const CommandOptions &opts) {
  if (!opts.disk)
    throw ConfigError("--disk cx,cy,rho is required");
  return parse_disk(*opts.disk);
}

} // namespace

int cmd_validate(const CommandOptions &opts) {
  if (opts.config && !fs::exists(*opts.config)) {
    std::cerr << "error: config file not found: " << opts.config->string() << "\n";
    return kExitUsage;
  }
  ValidateOptions v;
  v.wronskian_perturbation = opts.inject_wronskian;
  const auto suites = run_validation(v);
  const auto summary = validation_summary(suites);
  if (opts.out) {
    fs::create_directories(*opts.out);
    write_json(*opts.out / "validate_summary.json", summary);
  }
  std::cout << summary.dump(2) << "\n";
  bool ok = true;
  for (const auto &s : suites)
    if (!s.pass()) {
      ok = false;
      std::cerr << "suite failed: " << s.name << "\n";
    }
  return ok ? kExitOk : kExitFailure;
}

int cmd_simulate(const CommandOptions &opts) {
  const RunConfig cfg = load(opts);
  const fs::path dir = out_dir(opts, cfg);
  const FarFieldVector u = simulate_data(cfg);
  write_fffile(dir / "farfield.csv", u, cfg.medium.k);
  const auto &d = cfg.discretization;
  write_json(dir / "simulate.json", {{"N", u.size()},
                                     {"M", d.effective_data_M()},
                                     {"quad_order", d.quad_order},
                                     {"k", cfg.medium.k},
                                     {"noise_delta", cfg.noise.delta},
                                     {"seed", cfg.noise.seed},
                                     {"norm", u.norm()}});
  return kExitOk;
}

int cmd_operator(const CommandOptions &opts) {
  const RunConfig cfg = load(opts);
  const TestDisk disk = require_disk(opts);
  const fs::path dir = out_dir(opts, cfg);
  OperatorCache cache = make_cache(cfg);
  const auto F = obstacle_far_field_operator(cfg.medium, disk, cfg.discretization.N,
                                             cfg.discretization.M, &cache);
  write_ffop_file(dir / "operator.ffop", F);
  return kExitOk;
}

int cmd_indicate(const CommandOptions &opts) {
  const RunConfig cfg = load(opts);
  const fs::path dir = out_dir(opts, cfg);
  const FarFieldVector u = load_data(opts, cfg);
  OperatorCache cache = make_cache(cfg);
  SweepOptions so;
  so.N = cfg.discretization.N;
  so.M = cfg.discretization.M;
  so.eps_rel = cfg.eps_rel();
  so.threads = opts.threads;
  so.cache = &cache;
  const auto map = indicator_map(cfg.medium, u, enumerate_disks(cfg.sampling.family, cfg.medium.R), so);
  if (map.records.empty())
    throw Error("empty admissible family");
  write_file_atomic(dir / "indicator_map.csv", indicator_csv(map));
  return kExitOk;
}

int cmd_reconstruct(const CommandOptions &opts) {
  const RunConfig cfg = load(opts);
  const fs::path dir = out_dir(opts, cfg);
  const FarFieldVector u = load_data(opts, cfg);
  OperatorCache cache = make_cache(cfg);
  const ReconstructionResult res = reconstruct(cfg, u, opts.threads, &cache);

  write_file_atomic(dir / "indicator_map.csv", indicator_csv(res.map));
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto &s : res.map.skipped)
    skipped.push_back({{"center", {s.disk.center.x(), s.disk.center.y()}},
                       {"radius", s.disk.radius},
                       {"reason", s.reason}});
  write_json(dir / "contained_disks.json",
             {{"contained", disks_json(res.contained)}, {"skipped", skipped}});
  write_json(dir / "metrics.json", res.metrics);
  if (!res.estimate) {
    std::cerr << "error: no test disk classified as containing the support\n";
    return kExitFailure;
  }
  write_file_atomic(dir / "mask.pgm", mask_pgm(*res.estimate));
  write_file_atomic(dir / "mask.csv", mask_csv(*res.estimate));
  return kExitOk;
}

int cmd_spectrum(const CommandOptions &opts) {
  const RunConfig cfg = load(opts);
  const TestDisk disk = require_disk(opts);
  const fs::path dir = out_dir(opts, cfg);
  const FarFieldVector u = load_data(opts, cfg);
  OperatorCache cache = make_cache(cfg);
  SweepOptions so;
  so.N = cfg.discretization.N;
  so.M = cfg.discretization.M;
  so.eps_rel = cfg.eps_rel();
  so.cache = &cache;
  const auto rep = check_admissible(cfg.medium, disk, so.M);
  if (!rep.ok())
    throw InvalidGeometry("inadmissible test disk: " + rep.message);
  write_file_atomic(dir / "spectrum.csv", spectrum_csv(disk_indicator(cfg.medium, u, disk, so)));
  return kExitOk;
}

} // namespace cornersampler
