#include "cornersampler/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

namespace cornersampler {

using nlohmann::json;

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string &key, const std::string &what) {
  throw ConfigError("config: " + key + ": " + what);
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.contains(key))
    fail(path + "." + key, "missing");
  return obj.at(key);
}

void expect_object(const json &j, const std::string &path, std::set<std::string> allowed) {
  if (!j.is_object())
    fail(path, "expected an object");
  for (const auto &[k, v] : j.items())
    if (!allowed.count(k))
      fail(path + "." + k, "unknown key");
}

double get_real(const json &j, const std::string &path) {
  if (!j.is_number())
    fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    fail(path, "must be finite");
  return v;
}

int get_int(const json &j, const std::string &path) {
  if (!j.is_number_integer())
    fail(path, "expected an integer");
  return j.get<int>();
}

Vec2 get_point(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 2)
    fail(path, "expected [x, y]");
  return {get_real(j[0], path + "[0]"), get_real(j[1], path + "[1]")};
}

// A complex literal is either a real number or [re, im].
cplx get_complex(const json &j, const std::string &path) {
  if (j.is_number())
    return {get_real(j, path), 0.0};
  if (!j.is_array() || j.size() != 2)
    fail(path, "expected a number or [re, im]");
  return {get_real(j[0], path + "[0]"), get_real(j[1], path + "[1]")};
}

json put_point(const Vec2 &p) { return json::array({p.x(), p.y()}); }
json put_complex(const cplx &c) { return json::array({c.real(), c.imag()}); }

Medium medium_from(const json &j) {
  expect_object(j, "medium", {"k", "n0", "R", "lambda"});
  Medium m;
  m.k = get_real(require(j, "k", "medium"), "medium.k");
  m.n0 = get_real(require(j, "n0", "medium"), "medium.n0");
  m.R = get_real(require(j, "R", "medium"), "medium.R");
  m.lambda = get_real(require(j, "lambda", "medium"), "medium.lambda");
  return m;
}

SourceRegion region_from(const json &j) {
  const std::string path = "source.region";
  if (!j.is_object())
    fail(path, "expected an object");
  const std::string type = require(j, "type", path).get<std::string>();
  if (type == "polygon") {
    expect_object(j, path, {"type", "vertices"});
    const json &vs = require(j, "vertices", path);
    if (!vs.is_array())
      fail(path + ".vertices", "expected an array of [x, y]");
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < vs.size(); ++i)
      pts.push_back(get_point(vs[i], path + ".vertices[" + std::to_string(i) + "]"));
    try {
      return validate_polygon(pts);
    } catch (const Error &e) {
      fail(path, e.what());
    }
  }
  if (type == "disk") {
    expect_object(j, path, {"type", "center", "radius"});
    DiskD d;
    d.center = get_point(require(j, "center", path), path + ".center");
    d.radius = get_real(require(j, "radius", path), path + ".radius");
    if (!(d.radius > 0.0))
      fail(path + ".radius", "must be positive");
    return d;
  }
  fail(path + ".type", "expected \"polygon\" or \"disk\", got \"" + type + "\"");
}

SourceAmplitude amplitude_from(const json &j, const SourceRegion &region,
                               std::optional<int> corner) {
  const std::string path = "source.amplitude";
  if (!j.is_object())
    fail(path, "expected an object");
  const std::string type = require(j, "type", path).get<std::string>();
  if (type == "constant") {
    expect_object(j, path, {"type", "c"});
    return ConstantAmplitude{get_complex(require(j, "c", path), path + ".c")};
  }
  if (type == "affine") {
    expect_object(j, path, {"type", "a", "c"});
    const json &a = require(j, "a", path);
    if (!a.is_array() || a.size() != 2)
      fail(path + ".a", "expected two complex components");
    AffineAmplitude out;
    out.a(0) = get_complex(a[0], path + ".a[0]");
    out.a(1) = get_complex(a[1], path + ".a[1]");
    out.c = get_complex(require(j, "c", path), path + ".c");
    return out;
  }
  if (type == "harmonic_monomial") {
    expect_object(j, path, {"type", "N", "A", "B", "anchor"});
    HarmonicMonomial h;
    h.N = get_int(require(j, "N", path), path + ".N");
    h.A = get_complex(require(j, "A", path), path + ".A");
    h.B = j.contains("B") ? get_complex(j.at("B"), path + ".B") : cplx(0.0);
    if (j.contains("anchor")) {
      h.anchor = get_point(j.at("anchor"), path + ".anchor");
    } else if (const auto *p = std::get_if<Polygon>(&region)) {
      h.anchor = p->vertex(static_cast<std::size_t>(corner.value_or(0)));
    } else {
      fail(path + ".anchor", "required when the region is not a polygon");
    }
    return h;
  }
  if (type == "nonradiating_bump") {
    expect_object(j, path, {"type", "center", "radius", "power"});
    NonRadiatingBump b;
    b.center = get_point(require(j, "center", path), path + ".center");
    b.radius = get_real(require(j, "radius", path), path + ".radius");
    b.power = j.contains("power") ? get_int(j.at("power"), path + ".power") : kDefaultBumpPower;
    return b;
  }
  fail(path + ".type", "unknown amplitude \"" + type + "\"");
}

CenterGrid grid_from(const json &j, const std::string &path) {
  expect_object(j, path, {"n", "extent"});
  CenterGrid g;
  if (j.contains("n"))
    g.n = get_int(j.at("n"), path + ".n");
  if (j.contains("extent"))
    g.extent = get_real(j.at("extent"), path + ".extent");
  if (g.n <= 0)
    fail(path + ".n", "must be positive");
  if (!(g.extent >= 0.0 && g.extent < 1.0))
    fail(path + ".extent", "must lie in [0, 1)");
  return g;
}

TestDiskFamily family_from(const json &j) {
  const std::string path = "sampling.family";
  if (!j.is_object())
    fail(path, "expected an object");
  const std::string type = require(j, "type", path).get<std::string>();
  if (type == "fixed_radius") {
    expect_object(j, path, {"type", "centers", "rho"});
    FixedRadiusGrid f;
    if (j.contains("centers"))
      f.centers = grid_from(j.at("centers"), path + ".centers");
    if (j.contains("rho"))
      f.rho = get_real(j.at("rho"), path + ".rho");
    return f;
  }
  if (type == "radius_sweep") {
    expect_object(j, path, {"type", "centers", "radii"});
    RadiusSweep s;
    if (j.contains("centers"))
      s.centers = grid_from(j.at("centers"), path + ".centers");
    const json &r = require(j, "radii", path);
    if (!r.is_array() || r.empty())
      fail(path + ".radii", "expected a non-empty array");
    for (std::size_t i = 0; i < r.size(); ++i)
      s.radii.push_back(get_real(r[i], path + ".radii[" + std::to_string(i) + "]"));
    return s;
  }
  fail(path + ".type", "expected \"fixed_radius\" or \"radius_sweep\"");
}

TestDisk disk_from(const json &j, const std::string &path) {
  expect_object(j, path, {"center", "radius"});
  return {get_point(require(j, "center", path), path + ".center"),
          get_real(require(j, "radius", path), path + ".radius")};
}

json grid_to(const CenterGrid &g) { return {{"n", g.n}, {"extent", g.extent}}; }

RunConfig config_from_json_unchecked(const json &j);

} // namespace

double RunConfig::eps_rel() const {
  if (sampling.eps_rel)
    return *sampling.eps_rel;
  return noise.delta > 0.0 ? noise_aware_cutoff(noise.delta) : kDefaultEpsRel;
}

TestDisk RunConfig::reference_disk() const {
  return sampling.reference.value_or(default_reference_disk(medium.R));
}

std::optional<Polygon> RunConfig::ground_truth() const {
  if (const auto *p = std::get_if<Polygon>(&source.region))
    return *p;
  return std::nullopt;
}

void validate_config(const RunConfig &cfg) {
  try {
    cfg.medium.validate();
  } catch (const Error &e) {
    fail("medium", e.what());
  }
  try {
    validate_source(cfg.medium, cfg.source);
  } catch (const Error &e) {
    fail("source", e.what());
  }
  if (cfg.corner_of_interest) {
    const auto *p = std::get_if<Polygon>(&cfg.source.region);
    if (!p)
      fail("source.corner_of_interest", "requires a polygon region");
    if (*cfg.corner_of_interest < 0 || *cfg.corner_of_interest >= static_cast<int>(p->size()))
      fail("source.corner_of_interest", "vertex index out of range");
  }

  const auto &d = cfg.discretization;
  const auto grid = [](int N, int M, const std::string &path) {
    if (M < 0 || 2 * M > kDefaultMaxOrder)
      fail(path + ".M", "must lie in [0, " + std::to_string(kDefaultMaxOrder / 2) + "]");
    try {
      check_grid(N, M);
    } catch (const Error &e) {
      fail(path + ".N", e.what());
    }
  };
  grid(d.N, d.M, "discretization");
  grid(d.effective_data_N(), d.effective_data_M(), "discretization.data");
  if (d.quad_order < 1 || d.quad_order > 20)
    fail("discretization.quad_order", "must lie in [1, 20]");

  const auto &s = cfg.sampling;
  if (!(s.tau > 0.0))
    fail("sampling.tau", "must be positive");
  if (s.eps_rel && !(*s.eps_rel > 0.0 && *s.eps_rel < 1.0))
    fail("sampling.eps_rel", "must lie in (0, 1)");
  if (s.mask_resolution <= 0 || s.mask_resolution > 4096)
    fail("sampling.mask_resolution", "must lie in [1, 4096]");
  const auto radius_ok = [](double r) { return r > 0.0 && r < 1.0; };
  if (const auto *f = std::get_if<FixedRadiusGrid>(&s.family)) {
    if (!radius_ok(f->rho))
      fail("sampling.family.rho", "must lie in (0, 1) (units of R)");
  } else {
    for (double r : std::get<RadiusSweep>(s.family).radii)
      if (!radius_ok(r))
        fail("sampling.family.radii", "every radius must lie in (0, 1) (units of R)");
  }
  const TestDisk ref = cfg.reference_disk();
  if (!(ref.radius > 0.0 && ref.center.norm() + ref.radius < cfg.medium.R))
    fail("sampling.reference", "must satisfy |z| + rho < R");

  if (!(cfg.noise.delta >= 0.0 && cfg.noise.delta < 1.0))
    fail("noise.delta", "must lie in [0, 1)");
  if (cfg.paths.output_dir.empty())
    fail("paths.output_dir", "must not be empty");
}

RunConfig config_from_json(const json &j) {
  try {
    return config_from_json_unchecked(j);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

namespace {

RunConfig config_from_json_unchecked(const json &j) {
  expect_object(j, "config",
                {"schema_version", "medium", "source", "discretization", "sampling", "noise", "paths"});
  const int version = get_int(require(j, "schema_version", "config"), "schema_version");
  if (version != kConfigSchemaVersion)
    fail("schema_version", "unsupported version " + std::to_string(version));

  RunConfig cfg;
  cfg.medium = medium_from(require(j, "medium", "config"));

  const json &src = require(j, "source", "config");
  expect_object(src, "source", {"region", "amplitude", "corner_of_interest"});
  cfg.source.region = region_from(require(src, "region", "source"));
  if (src.contains("corner_of_interest"))
    cfg.corner_of_interest = get_int(src.at("corner_of_interest"), "source.corner_of_interest");
  cfg.source.amplitude = amplitude_from(require(src, "amplitude", "source"), cfg.source.region,
                                        cfg.corner_of_interest);

  if (j.contains("discretization")) {
    const json &d = j.at("discretization");
    expect_object(d, "discretization", {"N", "M", "quad_order", "data_N", "data_M"});
    auto &out = cfg.discretization;
    if (d.contains("N"))
      out.N = get_int(d.at("N"), "discretization.N");
    if (d.contains("M"))
      out.M = get_int(d.at("M"), "discretization.M");
    if (d.contains("quad_order"))
      out.quad_order = get_int(d.at("quad_order"), "discretization.quad_order");
    if (d.contains("data_N"))
      out.data_N = get_int(d.at("data_N"), "discretization.data_N");
    if (d.contains("data_M"))
      out.data_M = get_int(d.at("data_M"), "discretization.data_M");
  }

  if (j.contains("sampling")) {
    const json &s = j.at("sampling");
    expect_object(s, "sampling", {"family", "tau", "eps_rel", "reference", "mask_resolution"});
    auto &out = cfg.sampling;
    if (s.contains("family"))
      out.family = family_from(s.at("family"));
    if (s.contains("tau"))
      out.tau = get_real(s.at("tau"), "sampling.tau");
    if (s.contains("eps_rel") && !s.at("eps_rel").is_null())
      out.eps_rel = get_real(s.at("eps_rel"), "sampling.eps_rel");
    if (s.contains("reference") && !s.at("reference").is_null())
      out.reference = disk_from(s.at("reference"), "sampling.reference");
    if (s.contains("mask_resolution"))
      out.mask_resolution = get_int(s.at("mask_resolution"), "sampling.mask_resolution");
  }

  if (j.contains("noise")) {
    const json &n = j.at("noise");
    expect_object(n, "noise", {"delta", "seed"});
    if (n.contains("delta"))
      cfg.noise.delta = get_real(n.at("delta"), "noise.delta");
    if (n.contains("seed")) {
      if (!n.at("seed").is_number_unsigned())
        fail("noise.seed", "expected a non-negative integer");
      cfg.noise.seed = n.at("seed").get<std::uint64_t>();
    }
  }

  if (j.contains("paths")) {
    const json &p = j.at("paths");
    expect_object(p, "paths", {"cache_dir", "output_dir"});
    if (p.contains("cache_dir") && !p.at("cache_dir").is_null())
      cfg.paths.cache_dir = p.at("cache_dir").get<std::string>();
    if (p.contains("output_dir"))
      cfg.paths.output_dir = p.at("output_dir").get<std::string>();
  }

  validate_config(cfg);
  return cfg;
}

} // namespace

json config_to_json(const RunConfig &cfg) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["medium"] = {{"k", cfg.medium.k}, {"n0", cfg.medium.n0}, {"R", cfg.medium.R},
                 {"lambda", cfg.medium.lambda}};

  json src;
  src["region"] = std::visit(
      overloaded{[](const Polygon &p) {
                   json vs = json::array();
                   for (const Vec2 &v : p.vertices())
                     vs.push_back(put_point(v));
                   return json{{"type", "polygon"}, {"vertices", vs}};
                 },
                 [](const DiskD &d) {
                   return json{{"type", "disk"}, {"center", put_point(d.center)}, {"radius", d.radius}};
                 }},
      cfg.source.region);
  src["amplitude"] = std::visit(
      overloaded{[](const ConstantAmplitude &a) {
                   return json{{"type", "constant"}, {"c", put_complex(a.c)}};
                 },
                 [](const AffineAmplitude &a) {
                   return json{{"type", "affine"},
                               {"a", json::array({put_complex(a.a(0)), put_complex(a.a(1))})},
                               {"c", put_complex(a.c)}};
                 },
                 [](const HarmonicMonomial &h) {
                   return json{{"type", "harmonic_monomial"}, {"N", h.N}, {"A", put_complex(h.A)},
                               {"B", put_complex(h.B)}, {"anchor", put_point(h.anchor)}};
                 },
                 [](const NonRadiatingBump &b) {
                   return json{{"type", "nonradiating_bump"}, {"center", put_point(b.center)},
                               {"radius", b.radius}, {"power", b.power}};
                 }},
      cfg.source.amplitude);
  if (cfg.corner_of_interest)
    src["corner_of_interest"] = *cfg.corner_of_interest;
  j["source"] = src;

  const auto &d = cfg.discretization;
  j["discretization"] = {{"N", d.N}, {"M", d.M}, {"quad_order", d.quad_order}};
  if (d.data_N)
    j["discretization"]["data_N"] = *d.data_N;
  if (d.data_M)
    j["discretization"]["data_M"] = *d.data_M;

  const auto &s = cfg.sampling;
  json fam;
  if (const auto *f = std::get_if<FixedRadiusGrid>(&s.family)) {
    fam = {{"type", "fixed_radius"}, {"centers", grid_to(f->centers)}, {"rho", f->rho}};
  } else {
    const auto &r = std::get<RadiusSweep>(s.family);
    fam = {{"type", "radius_sweep"}, {"centers", grid_to(r.centers)}, {"radii", r.radii}};
  }
  j["sampling"] = {{"family", fam}, {"tau", s.tau}, {"mask_resolution", s.mask_resolution}};
  if (s.eps_rel)
    j["sampling"]["eps_rel"] = *s.eps_rel;
  if (s.reference)
    j["sampling"]["reference"] = {{"center", put_point(s.reference->center)},
                                  {"radius", s.reference->radius}};

  j["noise"] = {{"delta", cfg.noise.delta}, {"seed", cfg.noise.seed}};
  j["paths"] = {{"output_dir", cfg.paths.output_dir}};
  if (cfg.paths.cache_dir)
    j["paths"]["cache_dir"] = *cfg.paths.cache_dir;
  return j;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

RunConfig benchmark_config() {
  RunConfig cfg;
  cfg.medium = {2.0, 4.0, 1.0, 0.5};
  cfg.source.region = validate_polygon(std::vector<Vec2>{{0.1, 0.1}, {0.5, 0.15}, {0.2, 0.5}});
  cfg.source.amplitude = ConstantAmplitude{1.0};
  cfg.corner_of_interest = 0;
  validate_config(cfg);
  return cfg;
}

std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig &cfg) {
  if (const char *env = std::getenv("CORNER_SAMPLER_CACHE"); env && *env)
    return std::filesystem::path(env);
  if (cfg.paths.cache_dir)
    return std::filesystem::path(*cfg.paths.cache_dir);
  return std::nullopt;
}

} // namespace cornersampler
