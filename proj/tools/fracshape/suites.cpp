#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "fracshape/deformation_kernels.hpp"
#include "fracshape/errors.hpp"
#include "fracshape/hadamard.hpp"
#include "fracshape/operators.hpp"
#include "fracshape/oracles.hpp"
#include "fracshape/properties.hpp"

namespace fracshape::cli {
namespace {

using Clock = std::chrono::steady_clock;

// Runs one check, timing it and turning exceptions into failed records.
template <class F>
CheckRecord timed(const std::string& check, const std::string& point, F&& body) {
  const auto start = Clock::now();
  CheckRecord r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = failed_record(check, point, e.what());
  }
  r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

FracParams params(const ScenarioConfig& c) { return FracParams(c.dimension, c.s); }

ShapeScenario scenario(const ScenarioConfig& c, const FlowConfig& f) {
  BoundaryOptions b;
  b.order = c.orders.boundary;
  b.adaptive = c.orders.adaptive_boundary;
  return ShapeScenario(c.domain(), f.flow(), params(c), b);
}

SolveOptions solve_options(const ScenarioConfig& c) {
  SolveOptions s;
  s.order = c.orders.volume;
  return s;
}

TraceOptions trace_options(const ScenarioConfig& c) {
  TraceOptions t;
  t.levels = c.orders.trace_levels;
  return t;
}

std::string pair_label(const Vec& x, const Vec& y) { return "x=" + format_point(x) + "|y=" + format_point(y); }

std::string format_matrix(const Mat& m) {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  for (int i = 0; i < m.dim(); ++i) {
    if (i) os << "|";
    for (int k = 0; k < m.dim(); ++k) os << (k ? ";" : "") << m(i, k);
  }
  os << "]";
  return os.str();
}

std::vector<Mat> appendix_jacobians(const ScenarioConfig& c) {
  std::vector<Mat> out = c.appendix_c.jacobians;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int k = 0; k < c.appendix_c.random_jacobians; ++k) {
    Mat m(c.dimension);
    // Redraw near-singular scalars so the relative comparison stays meaningful.
    do {
      for (int i = 0; i < c.dimension; ++i)
        for (int j = 0; j < c.dimension; ++j) m(i, j) = entry(rng);
    } while (m.max_singular_value() < 0.1);
    out.push_back(m);
  }
  return out;
}

std::function<double(const Vec&)> duality_field(const ScenarioConfig& c, const std::string& name) {
  if (name == "one") return [](const Vec&) { return 1.0; };
  const int axis = name.back() - '0';
  const BallDomain d = c.domain();
  return [d, axis](const Vec& z) { return outward_normal(d, z)[axis]; };
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  static const std::pair<std::string_view, Command> table[] = {
      {"green", Command::green},       {"solution", Command::solution},
      {"robin", Command::robin},       {"appendix-c", Command::appendix_c},
      {"duality", Command::duality},   {"gradient-identity", Command::gradient_identity},
      {"props", Command::props},       {"all", Command::all}};
  for (const auto& [n, c] : table)
    if (n == name) return c;
  return std::nullopt;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::green: return "green";
    case Command::solution: return "solution";
    case Command::robin: return "robin";
    case Command::appendix_c: return "appendix-c";
    case Command::duality: return "duality";
    case Command::gradient_identity: return "gradient-identity";
    case Command::props: return "props";
    case Command::all: return "all";
  }
  return "all";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"green",   "solution",          "robin", "appendix-c",
                                              "duality", "gradient-identity", "props", "all"};
  return names;
}

void require_inputs(Command cmd, const ScenarioConfig& c) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string(command_name(cmd)) + " needs " + what);
  };
  switch (cmd) {
    case Command::green:
      need(!c.flows.empty(), "at least one entry in 'flows'");
      need(!c.pairs.empty(), "at least one entry in 'pairs'");
      break;
    case Command::solution:
    case Command::robin:
    case Command::gradient_identity:
      need(!c.flows.empty(), "at least one entry in 'flows'");
      need(!c.points.empty(), "at least one entry in 'points'");
      break;
    case Command::all:
      need(!c.flows.empty(), "at least one entry in 'flows'");
      need(!c.points.empty() || !c.pairs.empty(), "'points' or 'pairs'");
      break;
    case Command::appendix_c:
    case Command::duality:
    case Command::props:
      break;
  }
}

std::vector<CheckRecord> run_green(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  for (const auto& f : c.flows) {
    const ShapeScenario sc = scenario(c, f);
    const std::string name = "green/" + f.label();
    for (const auto& [x, y] : c.pairs) {
      const std::string pt = pair_label(x, y);
      out.push_back(timed(name, pt, [&] {
        return make_record(name, pt, shape_deriv_green(sc, x, y), oracle_green(sc, x, y, c.fd), c.tolerances.green,
                           c.tolerances.absolute);
      }));
    }
  }
  return out;
}

std::vector<CheckRecord> run_solution(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  const FracParams p = params(c);
  const BallDomain d = c.domain();
  for (const auto& src : c.sources) {
    const SourceTerm h = src.term(d);
    // The trace depends only on the ball and h, so it is shared by all flows.
    std::optional<SolutionTrace> trace;
    std::string trace_error;
    if (!h.is_constant() && !c.flows.empty()) {
      try {
        const int order = effective_boundary_order(scenario(c, c.flows.front()), c.points);
        trace = solution_trace(d, p, h, order, solve_options(c), trace_options(c));
      } catch (const std::exception& e) {
        trace_error = e.what();
      }
    }
    const double tol = h.is_constant() ? c.tolerances.solution : c.tolerances.solution_quadrature;
    for (const auto& f : c.flows) {
      const ShapeScenario sc = scenario(c, f);
      const std::string name = "solution/" + f.label() + "/" + src.label();
      for (const auto& x : c.points) {
        const std::string pt = "x=" + format_point(x);
        out.push_back(timed(name, pt, [&] {
          if (!h.is_constant() && !trace) throw ConvergenceError("boundary trace failed: " + trace_error);
          const double formula = h.is_constant() ? shape_deriv_solution(sc, h, x) : shape_deriv_solution(sc, *trace, x);
          const double oracle = oracle_solution(sc, h, x, c.fd, solve_options(c));
          CheckRecord r = make_record(name, pt, formula, oracle, tol, c.tolerances.absolute);
          r.note = std::string("trace ") +
                   std::string(to_string(h.is_constant() ? TraceProvenance::closed_form : trace->provenance));
          return r;
        }));
      }
    }
  }
  return out;
}

std::vector<CheckRecord> run_robin(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  const FracParams p = params(c);
  const GreenBall g(c.domain(), p);
  for (const auto& f : c.flows) {
    const ShapeScenario sc = scenario(c, f);
    const std::string name = "robin/" + f.label();
    const std::string law = "robin-scaling-law/" + f.label();
    for (const auto& x : c.points) {
      const std::string pt = "x=" + format_point(x);
      out.push_back(timed(name, pt, [&] {
        return make_record(name, pt, shape_deriv_robin(sc, x), oracle_robin(sc, x, c.fd), c.tolerances.robin,
                           c.tolerances.absolute);
      }));
      // R_t(x) = (1+ta)^{2s-N} R((x - tv)/(1+ta)) differentiated by hand.
      out.push_back(timed(law, pt, [&] {
        const double exact =
            f.scale_rate * (2.0 * p.s() - p.dim()) * g.robin(x) - dot(g.robin_grad(x), sc.field()(x));
        return make_record(law, pt, shape_deriv_robin(sc, x), exact, c.tolerances.robin, c.tolerances.absolute);
      }));
    }
  }
  return out;
}

std::vector<CheckRecord> run_appendix_c(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  const FracParams p = params(c);
  AppendixCOptions opts;
  opts.seed = c.seed;
  const Vec& x = c.appendix_c.x;
  for (const auto& b : c.appendix_c.bumps) {
    const SmoothBump w(b.center, b.width);
    for (const auto& m : appendix_jacobians(c)) {
      const VectorFieldSpec Y = VectorFieldSpec::linear(m, Vec(c.dimension));
      std::ostringstream name;
      name.precision(6);
      name << "appendix-c/width=" << b.width << "/DY=" << format_matrix(m);
      const std::string pt = "x=" + format_point(x) + "|bump=" + format_point(b.center);
      out.push_back(timed(name.str(), pt, [&] {
        const IdentityPair r = appendix_c_identity(x, Y, w, p, opts);
        CheckRecord rec = make_record(name.str(), pt, r.lhs, r.rhs, c.tolerances.appendix_c, c.tolerances.absolute);
        std::ostringstream note;
        note.precision(10);
        if (r.rhs != 0.0) note << "lhs/rhs=" << r.lhs / r.rhs;
        if (r.lhs_std_error > 0.0) note << (r.rhs != 0.0 ? "; " : "") << "lhs_std_error=" << r.lhs_std_error;
        if (!rec.pass && r.rhs != 0.0 && std::fabs(r.lhs + r.rhs) <= c.tolerances.appendix_c * std::fabs(r.rhs))
          note << "; lhs agrees with -rhs";
        rec.note = note.str();
        return rec;
      }));
    }
  }
  return out;
}

std::vector<CheckRecord> run_duality(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  const FracParams p = params(c);
  const BallDomain d = c.domain();
  DualityOptions opts;
  opts.boundary_order = c.orders.boundary;
  opts.solve = solve_options(c);
  opts.trace = trace_options(c);
  for (const auto& src : c.sources) {
    const SourceTerm h = src.term(d);
    for (const auto& field : c.duality.fields) {
      const std::string name = "duality/" + src.label() + "/f=" + field;
      out.push_back(timed(name, "", [&] {
        const IdentityPair r = duality_lemma_ab(d, duality_field(c, field), h, p, opts);
        return make_record(name, "", r.lhs, r.rhs, c.tolerances.duality, c.tolerances.absolute);
      }));
    }
  }
  return out;
}

std::vector<CheckRecord> run_gradient_identity(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  const FracParams p = params(c);
  const BallDomain d = c.domain();
  GradientIdentityOptions opts;
  for (const auto& src : c.sources) {
    const SourceTerm h = src.term(d);
    for (const auto& f : c.flows) {
      const VectorFieldSpec Y = f.flow().generator();
      const std::string name = "gradient-identity/" + f.label() + "/" + src.label();
      for (const auto& x : c.points) {
        const std::string pt = "x=" + format_point(x);
        out.push_back(timed(name, pt, [&] {
          const IdentityPair r = gradient_identity_check(d, h, Y, x, p, opts);
          return make_record(name, pt, r.lhs, r.rhs, c.tolerances.gradient_identity, c.tolerances.absolute);
        }));
      }
    }
  }
  return out;
}

std::vector<CheckRecord> run_props(const ScenarioConfig& c) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(c.seed);
  PropertyOptions opts;
  opts.samples = c.props.samples;
  opts.calibrate = c.props.calibrate;
  auto add = [&](const std::vector<SweepResult>& sweeps) {
    for (const auto& sw : sweeps) {
      CheckRecord r = make_record("props/" + sw.name, "", static_cast<double>(sw.violations), 0.0, 0.0, 0.0);
      r.pass = sw.passed();
      std::ostringstream note;
      note.precision(6);
      note << "samples=" << sw.samples << "; worst_ratio=" << sw.worst_ratio << "; bound=" << sw.bound;
      r.note = note.str();
      out.push_back(std::move(r));
    }
  };
  auto sweep = [&](const char* label, auto&& fn) {
    const auto start = Clock::now();
    const std::size_t first = out.size();
    try {
      add(fn(rng, opts));
    } catch (const std::exception& e) {
      out.push_back(failed_record(std::string("props/") + label, "", e.what()));
    }
    // Sweeps are timed as a group; the cost is split evenly over their records.
    const double t = std::chrono::duration<double>(Clock::now() - start).count();
    for (std::size_t i = first; i < out.size(); ++i) out[i].runtime_s = t / static_cast<double>(out.size() - first);
  };
  sweep("kernel", kernel_property_sweeps);
  sweep("green", green_property_sweeps);
  return out;
}

std::vector<CheckRecord> run(Command cmd, const ScenarioConfig& c) {
  switch (cmd) {
    case Command::green: return run_green(c);
    case Command::solution: return run_solution(c);
    case Command::robin: return run_robin(c);
    case Command::appendix_c: return run_appendix_c(c);
    case Command::duality: return run_duality(c);
    case Command::gradient_identity: return run_gradient_identity(c);
    case Command::props: return run_props(c);
    case Command::all: break;
  }
  std::vector<CheckRecord> out;
  auto append = [&](std::vector<CheckRecord> part) {
    for (auto& r : part) out.push_back(std::move(r));
  };
  if (!c.pairs.empty()) append(run_green(c));
  if (!c.points.empty()) {
    append(run_solution(c));
    append(run_robin(c));
  }
  append(run_appendix_c(c));
  append(run_duality(c));
  if (!c.points.empty()) append(run_gradient_identity(c));
  append(run_props(c));
  return out;
}

}  // namespace fracshape::cli
