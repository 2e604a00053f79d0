#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "fracshape/core_math.hpp"
#include "fracshape/errors.hpp"

namespace fracshape::cli {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) fail(child(path, it.key()), "unknown field");
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Vec vector(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(path, "expected an array of " + std::to_string(dim) + " numbers");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = number(j[i], index(path, i));
  return v;
}

Mat matrix(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " rows of " + std::to_string(dim) + " numbers");
  Mat m(dim);
  for (int i = 0; i < dim; ++i) {
    const Vec row = vector(j[i], dim, index(path, i));
    for (int k = 0; k < dim; ++k) m(i, k) = row[k];
  }
  return m;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

template <class T, class F>
T optional_field(const Json& obj, std::string_view key, const std::string& path, T fallback, F&& read) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) return fallback;
  return read(*it, child(path, key));
}

FlowConfig parse_flow(const Json& j, int dim, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a 'kind'");
  FlowConfig f;
  f.kind = text(j["kind"], child(path, "kind"));
  f.translation = Vec(dim);
  if (f.kind == "translation") {
    allow_keys(j, path, {"kind", "v"});
    if (!j.contains("v")) fail(child(path, "v"), "required for a translation");
    f.translation = vector(j["v"], dim, child(path, "v"));
  } else if (f.kind == "dilation") {
    allow_keys(j, path, {"kind", "a"});
    f.scale_rate = optional_field(j, "a", path, 1.0, number);
  } else if (f.kind == "affine") {
    allow_keys(j, path, {"kind", "a", "v"});
    if (!j.contains("a") || !j.contains("v")) fail(path, "an affine flow needs 'a' and 'v'");
    f.scale_rate = number(j["a"], child(path, "a"));
    f.translation = vector(j["v"], dim, child(path, "v"));
  } else {
    fail(child(path, "kind"), "expected translation, dilation or affine");
  }
  return f;
}

SourceConfig parse_source(const Json& j, int dim, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a 'kind'");
  SourceConfig s;
  s.kind = text(j["kind"], child(path, "kind"));
  s.gradient = Vec(dim);
  if (s.kind == "constant") {
    allow_keys(j, path, {"kind", "value"});
    s.c0 = optional_field(j, "value", path, 1.0, number);
  } else if (s.kind == "affine" || s.kind == "quadratic") {
    if (s.kind == "affine")
      allow_keys(j, path, {"kind", "c0", "gradient"});
    else
      allow_keys(j, path, {"kind", "c0", "gradient", "q"});
    s.c0 = optional_field(j, "c0", path, 0.0, number);
    if (!j.contains("gradient")) fail(child(path, "gradient"), "required");
    s.gradient = vector(j["gradient"], dim, child(path, "gradient"));
    if (s.kind == "quadratic") s.quadratic = optional_field(j, "q", path, 0.0, number);
  } else {
    fail(child(path, "kind"), "expected constant, affine or quadratic");
  }
  return s;
}

void require_depth(const ScenarioConfig& c, const Vec& x, const std::string& path) {
  const BallDomain d = c.domain();
  if (!d.contains(x)) fail(path, "point must lie strictly inside the ball");
  if (!c.orders.adaptive_boundary && d.signed_distance(x) < 0.1 * d.radius())
    fail(path, "distance to the boundary is below 0.1 radius; set orders.adaptive_boundary to allow it");
}

}  // namespace

std::string FlowConfig::label() const {
  std::ostringstream os;
  os << kind;
  if (kind == "dilation" && scale_rate != 1.0) os << "(a=" << scale_rate << ")";
  if (kind == "affine") os << "(a=" << scale_rate << ")";
  return os.str();
}

SourceTerm SourceConfig::term(const BallDomain& d) const {
  if (kind == "constant") return SourceTerm::constant(c0);
  if (kind == "affine") return SourceTerm::affine(c0, gradient);
  return SourceTerm::quadratic(c0, gradient, quadratic, distance(d.center(), Vec(d.dim())) + d.radius());
}

std::string SourceConfig::label() const {
  if (kind == "constant") {
    std::ostringstream os;
    os << "h=" << c0;
    return os.str();
  }
  return "h=" + kind;
}

ScenarioConfig parse_config(const Json& j) {
  allow_keys(j, "", {"dimension", "s", "ball", "flows", "sources", "points", "pairs", "orders", "fd", "tolerances",
                     "seed", "appendix_c", "duality", "props"});
  ScenarioConfig c;
  if (!j.contains("dimension")) fail("dimension", "required");
  if (!j.contains("s")) fail("s", "required");
  const long long n = integer(j["dimension"], "dimension");
  if (n < 1 || n > 3) fail("dimension", "must be 1, 2 or 3");
  c.dimension = static_cast<int>(n);
  c.s = number(j["s"], "s");
  try {
    (void)FracParams(c.dimension, c.s);
  } catch (const DomainError& e) {
    fail("s", e.what());
  }
  const int dim = c.dimension;

  c.center = Vec(dim);
  if (j.contains("ball")) {
    const Json& b = j["ball"];
    allow_keys(b, "ball", {"center", "radius"});
    if (b.contains("center")) c.center = vector(b["center"], dim, "ball.center");
    if (b.contains("radius")) c.radius = number(b["radius"], "ball.radius");
    if (!(c.radius > 0.0)) fail("ball.radius", "must be positive");
  }

  if (j.contains("orders")) {
    const Json& o = j["orders"];
    allow_keys(o, "orders", {"boundary", "volume", "trace_levels", "adaptive_boundary"});
    c.orders.boundary = static_cast<int>(optional_field(o, "boundary", "orders", 64LL, integer));
    c.orders.volume = static_cast<int>(optional_field(o, "volume", "orders", 20LL, integer));
    c.orders.trace_levels = static_cast<int>(optional_field(o, "trace_levels", "orders", 3LL, integer));
    c.orders.adaptive_boundary = optional_field(o, "adaptive_boundary", "orders", false, boolean);
    if (c.orders.boundary < 8 || c.orders.boundary > 8192) fail("orders.boundary", "must lie in [8, 8192]");
    if (c.orders.volume < 4 || c.orders.volume > 400) fail("orders.volume", "must lie in [4, 400]");
    if (c.orders.trace_levels < 2 || c.orders.trace_levels > 6) fail("orders.trace_levels", "must lie in [2, 6]");
  }

  if (j.contains("fd")) {
    const Json& f = j["fd"];
    allow_keys(f, "fd", {"t0", "levels", "order", "ratio_tolerance", "noise_floor", "absolute_floor"});
    c.fd.t0 = optional_field(f, "t0", "fd", c.fd.t0, number);
    c.fd.levels = static_cast<int>(optional_field(f, "levels", "fd", static_cast<long long>(c.fd.levels), integer));
    c.fd.order = static_cast<int>(optional_field(f, "order", "fd", static_cast<long long>(c.fd.order), integer));
    c.fd.ratio_tolerance = optional_field(f, "ratio_tolerance", "fd", c.fd.ratio_tolerance, number);
    c.fd.noise_floor = optional_field(f, "noise_floor", "fd", c.fd.noise_floor, number);
    c.fd.absolute_floor = optional_field(f, "absolute_floor", "fd", c.fd.absolute_floor, number);
    if (!(c.fd.t0 > 0.0)) fail("fd.t0", "must be positive");
    if (c.fd.levels < 2 || c.fd.levels > 8) fail("fd.levels", "must lie in [2, 8]");
    if (c.fd.order != 2) fail("fd.order", "central differences have order 2");
    if (!(c.fd.ratio_tolerance > 0.0 && c.fd.ratio_tolerance < 1.0)) fail("fd.ratio_tolerance", "must lie in (0, 1)");
    if (!(c.fd.noise_floor >= 0.0)) fail("fd.noise_floor", "must be non-negative");
    if (!(c.fd.absolute_floor >= 0.0)) fail("fd.absolute_floor", "must be non-negative");
  }

  if (j.contains("flows")) {
    const Json& a = array(j["flows"], "flows");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = index("flows", i);
      FlowConfig f = parse_flow(a[i], dim, path);
      if (!(1.0 + c.fd.t0 * f.scale_rate > 0.0 && 1.0 - c.fd.t0 * f.scale_rate > 0.0) ||
          c.fd.t0 >= f.flow().max_step())
        fail(path, "fd.t0 exceeds the flow's admissible step " + std::to_string(f.flow().max_step()));
      c.flows.push_back(std::move(f));
    }
  }

  if (j.contains("sources")) {
    const Json& a = array(j["sources"], "sources");
    for (std::size_t i = 0; i < a.size(); ++i) c.sources.push_back(parse_source(a[i], dim, index("sources", i)));
  } else {
    c.sources.push_back(SourceConfig{"constant", 1.0, Vec(dim), 0.0});
  }

  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    allow_keys(t, "tolerances", {"green", "solution", "solution_quadrature", "robin", "appendix_c", "duality",
                                 "gradient_identity", "absolute"});
    auto read = [&](const char* key, double& slot) {
      slot = optional_field(t, key, "tolerances", slot, number);
      if (!(slot > 0.0)) fail(child("tolerances", key), "must be positive");
    };
    read("green", c.tolerances.green);
    read("solution", c.tolerances.solution);
    read("solution_quadrature", c.tolerances.solution_quadrature);
    read("robin", c.tolerances.robin);
    read("appendix_c", c.tolerances.appendix_c);
    read("duality", c.tolerances.duality);
    read("gradient_identity", c.tolerances.gradient_identity);
    read("absolute", c.tolerances.absolute);
  }

  if (j.contains("points")) {
    const Json& a = array(j["points"], "points");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = index("points", i);
      Vec x = vector(a[i], dim, path);
      require_depth(c, x, path);
      for (const auto& f : c.flows)
        for (double t : {c.fd.t0, -c.fd.t0})
          if (!deform(c.domain(), f.flow(), t).contains(x))
            fail(path, "point leaves the deformed ball of flow '" + f.label() + "' at t = " + std::to_string(t));
      c.points.push_back(std::move(x));
    }
  }

  if (j.contains("pairs")) {
    const Json& a = array(j["pairs"], "pairs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = index("pairs", i);
      if (!a[i].is_array() || a[i].size() != 2) fail(path, "expected a pair [x, y]");
      Vec x = vector(a[i][0], dim, index(path, 0));
      Vec y = vector(a[i][1], dim, index(path, 1));
      require_depth(c, x, index(path, 0));
      require_depth(c, y, index(path, 1));
      if (x == y) fail(path, "the two points must differ");
      c.pairs.emplace_back(std::move(x), std::move(y));
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }

  c.appendix_c.x = Vec(dim);
  if (j.contains("appendix_c")) {
    const Json& a = j["appendix_c"];
    allow_keys(a, "appendix_c", {"x", "bumps", "jacobians", "random_jacobians"});
    if (a.contains("x")) c.appendix_c.x = vector(a["x"], dim, "appendix_c.x");
    if (a.contains("bumps")) {
      const Json& b = array(a["bumps"], "appendix_c.bumps");
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string path = index("appendix_c.bumps", i);
        allow_keys(b[i], path, {"center", "width"});
        if (!b[i].contains("width")) fail(child(path, "width"), "required");
        BumpConfig bc{b[i].contains("center") ? vector(b[i]["center"], dim, child(path, "center")) : Vec(dim),
                      number(b[i]["width"], child(path, "width"))};
        if (!(bc.width > 0.0)) fail(child(path, "width"), "must be positive");
        c.appendix_c.bumps.push_back(std::move(bc));
      }
    }
    if (a.contains("jacobians")) {
      const Json& m = array(a["jacobians"], "appendix_c.jacobians");
      for (std::size_t i = 0; i < m.size(); ++i)
        c.appendix_c.jacobians.push_back(matrix(m[i], dim, index("appendix_c.jacobians", i)));
    }
    const long long r = optional_field(a, "random_jacobians", "appendix_c", 0LL, integer);
    if (r < 0 || r > 64) fail("appendix_c.random_jacobians", "must lie in [0, 64]");
    c.appendix_c.random_jacobians = static_cast<int>(r);
  }
  if (c.appendix_c.bumps.empty()) {
    Vec bc(dim);
    bc[0] = 0.2;
    c.appendix_c.bumps.push_back({bc, 0.3});
  }
  if (c.appendix_c.jacobians.empty() && c.appendix_c.random_jacobians == 0)
    c.appendix_c.jacobians.push_back(Mat::identity(dim));

  if (j.contains("duality")) {
    const Json& d = j["duality"];
    allow_keys(d, "duality", {"fields"});
    if (d.contains("fields")) {
      c.duality.fields.clear();
      const Json& f = array(d["fields"], "duality.fields");
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string path = index("duality.fields", i);
        std::string name = text(f[i], path);
        bool ok = name == "one";
        if (name.rfind("normal:", 0) == 0) {
          const std::string axis = name.substr(7);
          ok = axis.size() == 1 && axis[0] >= '0' && axis[0] < static_cast<char>('0' + dim);
        }
        if (!ok) fail(path, "expected 'one' or 'normal:<axis>' with axis below the dimension");
        c.duality.fields.push_back(std::move(name));
      }
    }
  }

  if (j.contains("props")) {
    const Json& p = j["props"];
    allow_keys(p, "props", {"samples", "calibrate"});
    const long long n_samples = optional_field(p, "samples", "props", 1000LL, integer);
    if (n_samples < 1 || n_samples > 10000000) fail("props.samples", "must lie in [1, 1e7]");
    c.props.samples = static_cast<std::size_t>(n_samples);
    c.props.calibrate = optional_field(p, "calibrate", "props", false, boolean);
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string body = buf.str();
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, body.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(body.begin(), body.begin() + upto, '\n'));
    const std::size_t nl = body.rfind('\n', upto == 0 ? 0 : upto - 1);
    const std::size_t column = nl == std::string::npos ? upto + 1 : upto - nl;
    std::ostringstream os;
    os << path.string() << ":" << line << ":" << column << ": invalid JSON: " << e.what();
    throw ConfigError(os.str());
  }
  try {
    return parse_config(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["dimension"] = c.dimension;
  j["s"] = c.s;
  j["ball"] = {{"center", vec_json(c.center)}, {"radius", c.radius}};
  Json flows = Json::array();
  for (const auto& f : c.flows) {
    Json o;
    o["kind"] = f.kind;
    if (f.kind != "translation") o["a"] = f.scale_rate;
    if (f.kind != "dilation") o["v"] = vec_json(f.translation);
    flows.push_back(std::move(o));
  }
  j["flows"] = std::move(flows);
  Json sources = Json::array();
  for (const auto& s : c.sources) {
    Json o;
    o["kind"] = s.kind;
    if (s.kind == "constant") {
      o["value"] = s.c0;
    } else {
      o["c0"] = s.c0;
      o["gradient"] = vec_json(s.gradient);
      if (s.kind == "quadratic") o["q"] = s.quadratic;
    }
    sources.push_back(std::move(o));
  }
  j["sources"] = std::move(sources);
  Json points = Json::array();
  for (const auto& p : c.points) points.push_back(vec_json(p));
  j["points"] = std::move(points);
  Json pairs = Json::array();
  for (const auto& [x, y] : c.pairs) pairs.push_back(Json::array({vec_json(x), vec_json(y)}));
  j["pairs"] = std::move(pairs);
  j["orders"] = {{"boundary", c.orders.boundary},
                 {"volume", c.orders.volume},
                 {"trace_levels", c.orders.trace_levels},
                 {"adaptive_boundary", c.orders.adaptive_boundary}};
  j["fd"] = {{"t0", c.fd.t0},
             {"levels", c.fd.levels},
             {"order", c.fd.order},
             {"ratio_tolerance", c.fd.ratio_tolerance},
             {"noise_floor", c.fd.noise_floor},
             {"absolute_floor", c.fd.absolute_floor}};
  const auto& t = c.tolerances;
  j["tolerances"] = {{"green", t.green},
                     {"solution", t.solution},
                     {"solution_quadrature", t.solution_quadrature},
                     {"robin", t.robin},
                     {"appendix_c", t.appendix_c},
                     {"duality", t.duality},
                     {"gradient_identity", t.gradient_identity},
                     {"absolute", t.absolute}};
  j["seed"] = c.seed;
  Json bumps = Json::array();
  for (const auto& b : c.appendix_c.bumps) bumps.push_back({{"center", vec_json(b.center)}, {"width", b.width}});
  Json jacs = Json::array();
  for (const auto& m : c.appendix_c.jacobians) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
      rows.push_back(std::move(row));
    }
    jacs.push_back(std::move(rows));
  }
  j["appendix_c"] = {{"x", vec_json(c.appendix_c.x)},
                     {"bumps", std::move(bumps)},
                     {"jacobians", std::move(jacs)},
                     {"random_jacobians", c.appendix_c.random_jacobians}};
  j["duality"] = {{"fields", c.duality.fields}};
  j["props"] = {{"samples", c.props.samples}, {"calibrate", c.props.calibrate}};
  return j;
}

}  // namespace fracshape::cli
