// Experiment descriptions (JSON), multi-seed orchestration, and CSV output
// for the command-line front end.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sobolopt/optimizer.hpp"
#include "sobolopt/saltelli.hpp"
#include "sobolopt/testbed.hpp"

namespace sobolopt {

/// Invalid experiment description (file or flags); distinct from runtime
/// failures so the CLI can exit 2 vs 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SaltelliSource {
  int n_base = 1 << 14;
  double margin = 0.1;
  std::uint64_t seed = 0;
  bool assume_zero = false;
};

struct ExperimentSpec {
  std::string objective = "rosenbrock3";
  std::string name;  // CSV label; defaults to preset tag or objective id
  int dim = 0;       // 0 = objective's natural dimension
  int degree = 4;
  int budget_solves = 100;
  std::optional<std::vector<double>> box_lo, box_hi;
  char preset = 0;  // 'A'..'D'; 0 = not preset-driven
  std::optional<std::vector<SobolConstraint>> inline_constraints;
  std::optional<SaltelliSource> from_saltelli;
  std::vector<std::uint64_t> seeds = default_seeds();
  std::string out;  // CSV path; empty = stdout

  static std::vector<std::uint64_t> default_seeds() {
    std::vector<std::uint64_t> s(20);
    for (int i = 0; i < 20; ++i) s[i] = static_cast<std::uint64_t>(i + 1);
    return s;
  }

  std::string label() const {
    if (!name.empty()) return name;
    if (preset != 0) return std::string(1, preset);
    return objective;
  }
};

/// Seed list syntax: "a..b" (inclusive range) or comma-separated integers.
inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  const auto fail = [&] {
    throw ConfigError("field 'seeds': expected \"a..b\" or comma-separated "
                      "integers, got \"" + text + "\"");
  };
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      std::size_t used = 0;
      const std::uint64_t a = std::stoull(text.substr(0, dots), &used);
      if (used != dots) fail();
      const std::uint64_t b = std::stoull(text.substr(dots + 2), &used);
      if (used != text.size() - dots - 2 || b < a) fail();
      for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) fail();
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail();
  }
  if (seeds.empty()) fail();
  return seeds;
}

namespace detail {

inline VarSubset subset_from_ids(const nlohmann::json& ids, int dim) {
  std::vector<int> vars;
  for (const auto& v : ids) vars.push_back(v.get<int>());
  return make_subset(vars, dim);
}

}  // namespace detail

/// Parse an experiment description. Every failure names the offending
/// field. Exactly one of "preset", "constraints", "from_saltelli" may be
/// present; none means an unconstrained run.
inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("spec root must be a JSON object");
  ExperimentSpec spec;

  static const char* known[] = {"objective", "name",   "dim",
                                "degree",    "budget_solves", "box",
                                "preset",    "constraints",   "from_saltelli",
                                "seeds",     "out"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown field '" + key + "'");
  }

  auto read = [&j](const char* key, auto& into) {
    if (!j.contains(key)) return;
    try {
      into = j.at(key).get<std::decay_t<decltype(into)>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
  };
  read("objective", spec.objective);
  read("name", spec.name);
  read("dim", spec.dim);
  read("degree", spec.degree);
  read("budget_solves", spec.budget_solves);
  read("out", spec.out);

  TestObjective obj;
  try {
    obj = make_objective(spec.objective);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'objective': ") + e.what());
  }
  if (spec.dim == 0) spec.dim = obj.dim;
  if (spec.dim != obj.dim)
    throw ConfigError("field 'dim': objective '" + spec.objective +
                      "' has dimension " + std::to_string(obj.dim));
  try {
    BasisConfig{spec.dim, spec.degree}.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field 'degree': ") + e.what());
  }
  if (spec.budget_solves < 1)
    throw ConfigError("field 'budget_solves': must be >= 1");

  if (j.contains("box")) {
    const auto& box = j.at("box");
    std::vector<double> lo, hi;
    try {
      lo = box.at("lo").get<std::vector<double>>();
      hi = box.at("hi").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("field 'box': ") + e.what());
    }
    if (static_cast<int>(lo.size()) != spec.dim ||
        static_cast<int>(hi.size()) != spec.dim)
      throw ConfigError("field 'box': lo/hi must have length dim");
    try {
      AffineBox{lo, hi};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'box': ") + e.what());
    }
    spec.box_lo = std::move(lo);
    spec.box_hi = std::move(hi);
  }

  int sources = 0;
  if (j.contains("preset")) {
    ++sources;
    std::string tag;
    read("preset", tag);
    if (tag.size() != 1)
      throw ConfigError("field 'preset': expected one of A, B, C, D, got \"" +
                        tag + "\"");
    try {
      experiment_preset(tag[0]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'preset': ") + e.what());
    }
    spec.preset = tag[0];
  }
  if (j.contains("constraints")) {
    ++sources;
    std::vector<SobolConstraint> list;
    try {
      for (const auto& item : j.at("constraints")) {
        SobolConstraint c;
        for (const auto& fam : item.at("family"))
          c.family.push_back(detail::subset_from_ids(fam, spec.dim));
        c.bound = item.at("bound").get<double>();
        c.validate(spec.dim);
        list.push_back(std::move(c));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("field 'constraints': ") + e.what());
    }
    spec.inline_constraints = std::move(list);
  }
  if (j.contains("from_saltelli")) {
    ++sources;
    SaltelliSource src;
    const auto& fs = j.at("from_saltelli");
    try {
      if (fs.contains("n_base")) src.n_base = fs.at("n_base").get<int>();
      if (fs.contains("margin")) src.margin = fs.at("margin").get<double>();
      if (fs.contains("seed")) src.seed = fs.at("seed").get<std::uint64_t>();
      if (fs.contains("assume_zero"))
        src.assume_zero = fs.at("assume_zero").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("field 'from_saltelli': ") + e.what());
    }
    if (src.n_base < 2)
      throw ConfigError("field 'from_saltelli': n_base must be >= 2");
    if (!(src.margin >= 0.0))
      throw ConfigError("field 'from_saltelli': margin must be >= 0");
    spec.from_saltelli = src;
  }
  if (sources > 1)
    throw ConfigError(
        "fields 'preset', 'constraints', 'from_saltelli' are mutually "
        "exclusive");

  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    if (s.is_string()) {
      spec.seeds = parse_seed_list(s.get<std::string>());
    } else {
      try {
        spec.seeds = s.get<std::vector<std::uint64_t>>();
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("field 'seeds': ") + e.what());
      }
    }
    if (spec.seeds.empty()) throw ConfigError("field 'seeds': must be nonempty");
  }
  return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("spec file " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

/// The canonical-domain objective an ExperimentSpec describes.
inline Objective objective_for(const ExperimentSpec& spec) {
  TestObjective obj = make_objective(spec.objective);
  if (spec.box_lo) {
    const AffineBox box(*spec.box_lo, *spec.box_hi);
    const Objective raw = obj.on_box;
    return [box, raw](std::span<const double> u) {
      for (double ui : u) detail::check_coordinate(ui);
      return raw(box.to_box(u));
    };
  }
  return obj.canonical;
}

/// Resolve the constraint list (preset tag, inline list, or bounds
/// suggested by a seeded pick-freeze estimate of the objective itself).
inline std::vector<SobolConstraint> constraints_for(const ExperimentSpec& spec) {
  if (spec.preset != 0) return experiment_preset(spec.preset);
  if (spec.inline_constraints) return *spec.inline_constraints;
  if (spec.from_saltelli) {
    Rng rng(spec.from_saltelli->seed);
    const Objective f = objective_for(spec);
    const SensitivityEstimate est =
        estimate(f, spec.dim, spec.from_saltelli->n_base, rng);
    return suggest_bounds(est, spec.from_saltelli->margin,
                          spec.from_saltelli->assume_zero);
  }
  return {};
}

struct SeedOutcome {
  std::uint64_t seed = 0;
  RunResult result;
};

/// Run every seed of the spec. Seeds execute concurrently (each run is a
/// pure function of its seed); outcomes are returned sorted by seed.
inline std::vector<SeedOutcome> run_rows(const ExperimentSpec& spec) {
  const Objective f = objective_for(spec);
  RunConfig base;
  base.dim = spec.dim;
  base.degree = spec.degree;
  base.budget_solves = spec.budget_solves;
  base.constraints = constraints_for(spec);
  base.validate();

  std::vector<SeedOutcome> out(spec.seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < spec.seeds.size();
         i = next.fetch_add(1)) {
      try {
        RunConfig rc = base;
        rc.seed = spec.seeds[i];
        out[i].seed = spec.seeds[i];
        out[i].result = run(f, rc);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min(hw, spec.seeds.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::sort(out.begin(), out.end(),
            [](const SeedOutcome& a, const SeedOutcome& b) {
              return a.seed < b.seed;
            });
  return out;
}

/// Shortest round-trippable decimal form (17 significant digits).
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Linear-interpolation quantile on sorted data (the common "type 7").
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.5);
}

inline double iqr_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

/// Per-seed rows followed by two summary rows (seed column "median" /
/// "iqr", termination "SUMMARY") over n_eval, m_best and solves_used.
inline void write_run_csv(std::ostream& os, const ExperimentSpec& spec,
                          const std::vector<SeedOutcome>& rows) {
  os << "experiment,seed,n_eval,m_best,solves_used,termination\n";
  std::vector<double> n_eval, m_best, solves;
  for (const auto& row : rows) {
    os << spec.label() << ',' << row.seed << ',' << row.result.n_eval << ','
       << format_double(row.result.m_best) << ',' << row.result.solves_used
       << ',' << to_string(row.result.termination) << '\n';
    n_eval.push_back(row.result.n_eval);
    m_best.push_back(row.result.m_best);
    solves.push_back(row.result.solves_used);
  }
  os << spec.label() << ",median," << format_double(median_of(n_eval)) << ','
     << format_double(median_of(m_best)) << ','
     << format_double(median_of(solves)) << ",SUMMARY\n";
  os << spec.label() << ",iqr," << format_double(iqr_of(n_eval)) << ','
     << format_double(iqr_of(m_best)) << ',' << format_double(iqr_of(solves))
     << ",SUMMARY\n";
}

/// One row per variable: index (1-based), S_i, T_i, n_base.
inline void write_sensitivity_csv(std::ostream& os,
                                  const SensitivityEstimate& est) {
  os << "index,first_order,total,n_base\n";
  for (std::size_t i = 0; i < est.first_order.size(); ++i)
    os << (i + 1) << ',' << format_double(est.first_order[i]) << ','
       << format_double(est.total[i]) << ',' << est.n_base << '\n';
}

}  // namespace sobolopt
