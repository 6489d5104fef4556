#include "hwi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwi/bessel.hpp"
#include "hwi/dynamics.hpp"
#include "hwi/parallel.hpp"
#include "hwi/transport.hpp"

namespace hwi {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kCommands = {"check-hypercube", "check-torus",
                                         "check-bessel",    "check-flow",
                                         "transport",       "simulate"};

constexpr const char* kAllPointMasses = "point-mass:all";

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ConfigError("invalid '" + field + "': " + why);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(sep);
    out.push_back(trim(rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 1);
  }
  return out;
}

template <typename T>
T parse_exact(const std::string& s, const std::string& what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("malformed " + what + " '" + s + "'");
  }
  return value;
}

bool is_hypercube_command(const CampaignConfig& c) {
  return c.command == "check-hypercube" ||
         (c.command != "check-torus" && c.space == "hypercube");
}

StateSpace make_space(bool cube, int n) {
  return cube ? StateSpace::hypercube(n) : StateSpace::torus(n);
}

}  // namespace

std::vector<int> parse_size_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_exact<int>(part, "size"));
      continue;
    }
    const int lo = parse_exact<int>(trim(part.substr(0, dots)), "size range start");
    const int hi = parse_exact<int>(trim(part.substr(dots + 2)), "size range end");
    if (hi < lo) throw ConfigError("empty size range '" + part + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) {
    out.push_back(parse_exact<double>(part, "number"));
  }
  return out;
}

std::vector<double> CampaignConfig::effective_t() const {
  if (!t.empty()) return t;
  if (command == "check-bessel") return {0.1, 1.0, 10.0, 100.0};
  if (command == "simulate") return {0.1, 0.5, 1.0};
  return {0.1, 0.5, 1.0, 2.0};
}

void CampaignConfig::validate() const {
  if (!kCommands.count(command)) bad("command", "unknown command '" + command + "'");
  if (trials < 1) bad("trials", "must be >= 1");
  if (format != "csv" && format != "jsonl") bad("format", "expected csv or jsonl");
  if (!(tol >= 0.0) || !std::isfinite(tol)) bad("tol", "must be a finite value >= 0");
  if (threads < 1) bad("threads", "must be >= 1");
  if (space != "hypercube" && space != "torus") bad("space", "expected hypercube or torus");
  if (inequality != "hwi" && inequality != "mlsi") bad("inequality", "expected hwi or mlsi");
  if (n_max < 0 || n_max > 10000) bad("n-max", "must lie in [0, 10000]");
  if (d_max < 0 || d_max > 1000) bad("d-max", "must lie in [0, 1000]");
  if (samples < 1) bad("samples", "must be >= 1");
  for (double v : effective_t()) {
    if (!(v > 0.0) || !std::isfinite(v)) bad("t", "times must be finite and > 0");
  }
  if (command == "check-bessel") return;
  if (command == "simulate" && space == "torus") {
    for (int d : n) {
      if (d < 0) bad("n", "lift displacement must be >= 0");
    }
    return;
  }
  if (n.empty()) bad("n", "at least one size is required");
  const bool cube = is_hypercube_command(*this);
  for (int size : n) {
    try {
      make_space(cube, size);
    } catch (const std::domain_error& e) {
      bad("n", e.what());
    }
  }
  if (command == "simulate") {
    for (int size : n) {
      if (size > 16) bad("n", "coupling simulation supports hypercube sizes up to 16");
    }
    return;
  }
  if (family.empty()) bad("family", "at least one family is required");
  for (const std::string& spec : family) {
    if (spec == kAllPointMasses) {
      if (command == "transport") bad("family", "point-mass:all is not a transport family");
      continue;
    }
    DistributionFamily fam;
    try {
      fam = DistributionFamily::parse(spec);
    } catch (const std::invalid_argument& e) {
      bad("family", e.what());
    }
    for (int size : n) {
      try {
        sample(fam, make_space(cube, size), 0);
      } catch (const std::domain_error& e) {
        bad("family", "'" + spec + "' on size " + std::to_string(size) + ": " + e.what());
      }
    }
  }
}

std::string CampaignConfig::to_json() const {
  json j;
  j["command"] = command;
  j["n"] = n;
  j["family"] = family;
  j["trials"] = trials;
  j["seed"] = seed;
  j["t"] = t;
  j["output"] = output;
  j["format"] = format;
  j["tol"] = tol;
  j["threads"] = threads;
  j["space"] = space;
  j["inequality"] = inequality;
  j["n-max"] = n_max;
  j["d-max"] = d_max;
  j["samples"] = samples;
  return j.dump(2);
}

CampaignConfig CampaignConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  CampaignConfig c;
  auto take = [&j](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception&) {
      bad(key, "wrong JSON type");
    }
  };
  for (const auto& item : j.items()) {
    static const std::set<std::string> known = {
        "command", "n",     "family",     "trials", "seed",  "t",
        "output",  "format", "tol",       "threads", "space", "inequality",
        "n-max",   "d-max", "samples"};
    if (!known.count(item.key())) bad(item.key(), "unknown config key");
  }
  if (j.contains("n") && j["n"].is_string()) {
    c.n = parse_size_list(j["n"].get<std::string>());
  } else {
    take("n", c.n);
  }
  if (j.contains("t") && j["t"].is_string()) {
    c.t = parse_real_list(j["t"].get<std::string>());
  } else {
    take("t", c.t);
  }
  if (j.contains("family") && j["family"].is_string()) {
    c.family = {j["family"].get<std::string>()};
  } else {
    take("family", c.family);
  }
  if (j.contains("trials") && j["trials"].is_number_integer() &&
      j["trials"].get<long long>() < 0) {
    bad("trials", "must be >= 1");
  }
  take("command", c.command);
  take("trials", c.trials);
  take("seed", c.seed);
  take("output", c.output);
  take("format", c.format);
  take("tol", c.tol);
  take("threads", c.threads);
  take("space", c.space);
  take("inequality", c.inequality);
  take("n-max", c.n_max);
  take("d-max", c.d_max);
  take("samples", c.samples);
  return c;
}

void CampaignSummary::add(const InequalityReport& r) {
  if (total() == 0) min_margin = std::numeric_limits<double>::infinity();
  switch (r.verdict) {
    case Verdict::Pass: ++pass; break;
    case Verdict::VacuousPass: ++vacuous_pass; break;
    case Verdict::NotApplicable: ++not_applicable; break;
    case Verdict::Fail: ++fail; break;
  }
  if (r.verdict == Verdict::Pass || r.verdict == Verdict::Fail) {
    min_margin = std::min(min_margin, r.margin);
  }
}

// --- campaigns ----------------------------------------------------------

namespace {

using Task = std::function<std::vector<InequalityReport>()>;

std::string with_seed(const std::string& spec, std::uint64_t seed) {
  return spec + ";seed=" + std::to_string(seed);
}

// Expands (sizes x families x trials) into sampling jobs with per-trial seeds
// derived from the campaign seed and the global trial index.
template <typename Check>
void add_distribution_trials(const CampaignConfig& c, bool cube, Check check,
                             std::vector<Task>& tasks) {
  std::uint64_t index = 0;
  for (int size : c.n) {
    const StateSpace space = make_space(cube, size);
    for (const std::string& spec : c.family) {
      if (spec == kAllPointMasses) {
        for (State x = 0; x < space.size(); ++x) {
          tasks.push_back([=] {
            const std::string label = "point-mass:" + std::to_string(x);
            return check(Distribution::point_mass(space, x), label);
          });
        }
        continue;
      }
      const DistributionFamily fam = DistributionFamily::parse(spec);
      for (std::size_t k = 0; k < c.trials; ++k) {
        const std::uint64_t seed = derive_seed(c.seed, index++);
        tasks.push_back([=] {
          return check(sample(fam, space, seed), with_seed(spec, seed));
        });
      }
    }
  }
}

InequalityReport bessel_record(int n, std::string family, double lhs, double rhs,
                               double tol) {
  InequalityReport r;
  r.space = "bessel";
  r.n = n;
  r.family = std::move(family);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.verdict = decide(true, false, r.margin, tol);
  return r;
}

void add_bessel_tasks(const CampaignConfig& c, std::vector<Task>& tasks) {
  for (double t : c.effective_t()) {
    const std::string ts = format_double(t);
    tasks.push_back([=] {
      const bessel::BesselEvaluator ev(2 * c.n_max + 1, t);
      std::vector<InequalityReport> out;
      for (int n = 0; n <= c.n_max; ++n) {
        for (int d = 0; d <= 2 * n; ++d) {
          const double lhs = (1.0 + d) * (d - 2.0 * n) / (2.0 * t);
          const double margin = bessel::check_ratio_bound(ev, n, d);
          out.push_back(bessel_record(
              n, "ratio;d=" + std::to_string(d) + ";t=" + ts, lhs, lhs + margin, c.tol));
        }
      }
      for (int n = 0; n < c.n_max; ++n) {
        const double a = (n + 1.0) / t;
        const double lhs = std::log(std::hypot(1.0, a) - a);
        out.push_back(bessel_record(n, "amos;t=" + ts, lhs,
                                    lhs + bessel::check_amos_bound(ev, n), c.tol));
      }
      return out;
    });
    for (int d = 1; d <= c.d_max; ++d) {
      tasks.push_back([=] {
        std::vector<InequalityReport> out;
        auto add = [&](const bessel::UnimodalSymmetricLaw& law, const std::string& name) {
          const double rhs = (d + 1.0) * d / (2.0 * t);
          const double margin = bessel::check_unimodal_expectation(law, d, t);
          out.push_back(bessel_record(
              d, "unimodal:" + name + ";d=" + std::to_string(d) + ";t=" + ts,
              rhs - margin, rhs, c.tol));
        };
        add(bessel::UnimodalSymmetricLaw::point_mass(), "point-mass");
        for (int k = 1; k <= 20; ++k) {
          add(bessel::UnimodalSymmetricLaw::uniform_window(k),
              "window:" + std::to_string(k));
          add(bessel::UnimodalSymmetricLaw::symmetric_binomial(k),
              "binomial:" + std::to_string(k));
        }
        return out;
      });
    }
  }
}

InequalityReport stat_record(std::string space, int n, std::string family,
                             double deviation, double band, double tol) {
  InequalityReport r;
  r.space = std::move(space);
  r.n = n;
  r.family = std::move(family);
  r.lhs = deviation;
  r.rhs = band;
  r.margin = band - deviation;
  r.verdict = decide(true, false, r.margin, tol);
  return r;
}

void add_simulation_tasks(const CampaignConfig& c, std::vector<Task>& tasks) {
  std::uint64_t index = 0;
  const auto ss = std::to_string(c.samples);
  const double total = static_cast<double>(c.samples);
  for (int size : c.n) {
    for (double t : c.effective_t()) {
      const std::uint64_t seed = derive_seed(c.seed, index++);
      const std::string ts = format_double(t);
      if (c.space == "hypercube") {
        tasks.push_back([=] {
          const StateSpace space = StateSpace::hypercube(size);
          const State y0 = space.size() - 1;
          const CouplingStats s =
              simulate_hypercube_coupling(space, 0, y0, t, c.samples, seed);
          const double p = -std::expm1(-2.0 * t);
          const double band = 4.0 * std::sqrt(p * (1.0 - p) / total);
          const std::string base = "coupling:x0=0;y0=" + std::to_string(y0) +
                                   ";t=" + ts + ";samples=" + ss +
                                   ";seed=" + std::to_string(seed);
          std::vector<InequalityReport> out;
          for (int i = 0; i < size; ++i) {
            out.push_back(stat_record(
                "hypercube", size, base + ";coord=" + std::to_string(i),
                std::abs(s.coalescence[static_cast<std::size_t>(i)] - p), band, c.tol));
          }
          return out;
        });
      } else {
        tasks.push_back([=] {
          const LiftStats s = simulate_torus_lift(size, t, c.samples, seed);
          const std::string base = "lift:d=" + std::to_string(size) + ";t=" + ts +
                                   ";samples=" + ss + ";seed=" + std::to_string(seed);
          std::vector<InequalityReport> out;
          out.push_back(stat_record("z-walk", size, base + ";displacement",
                                    static_cast<double>(s.displacement_violations),
                                    0.0, c.tol));
          // Points with fewer than ~25 expected hits are outside the normal
          // approximation behind the 4 sigma band.
          for (int m = 0;; ++m) {
            const double p = std::exp(bessel::log_bessel_i(m, t) - t);
            if (p * total < 25.0) break;
            const double band = 4.0 * std::sqrt(p * (1.0 - p) / total);
            for (int sign : {1, -1}) {
              if (m == 0 && sign < 0) continue;
              out.push_back(stat_record(
                  "z-walk", size, base + ";m=" + std::to_string(sign * m),
                  std::abs(s.frequency(sign * m) - p), band, c.tol));
            }
          }
          return out;
        });
      }
    }
  }
}

void add_transport_trials(const CampaignConfig& c, std::vector<Task>& tasks) {
  const bool cube = c.space == "hypercube";
  std::uint64_t index = 0;
  for (int size : c.n) {
    const StateSpace space = make_space(cube, size);
    for (const std::string& spec : c.family) {
      const DistributionFamily fam = DistributionFamily::parse(spec);
      for (std::size_t k = 0; k < c.trials; ++k) {
        const std::uint64_t seed = derive_seed(c.seed, index++);
        const std::uint64_t mu_seed = derive_seed(seed, 0x6d75);
        const std::string label = spec + ";seed=" + std::to_string(seed) +
                                  ";mu-seed=" + std::to_string(mu_seed);
        tasks.push_back([=] {
          const Distribution nu = sample(fam, space, seed);
          const Distribution mu = sample(fam, space, mu_seed);
          const double a = w1(nu, mu);
          const double b = w2(nu, mu);
          const double m = wc(nu, mu);
          auto record = [&](const std::string& which, double lhs, double rhs) {
            InequalityReport r;
            r.space = space.kind_name();
            r.n = size;
            r.family = label + ";bound=" + which;
            r.W1 = a;
            r.W2 = b;
            r.Wc = m;
            r.lhs = lhs;
            r.rhs = rhs;
            r.margin = rhs - lhs;
            r.verdict = decide(true, false, r.margin, c.tol);
            return r;
          };
          const double diam = static_cast<double>(space.diameter());
          return std::vector<InequalityReport>{
              record("lower", std::max(a, b * b), m * m),
              record("upper", m * m, std::min(2.0 * b * b, (diam + 1.0) * a))};
        });
      }
    }
  }
}

}  // namespace

std::vector<InequalityReport> run_campaign(const CampaignConfig& c) {
  c.validate();
  std::vector<Task> tasks;
  const double tol = c.tol;
  if (c.command == "check-hypercube") {
    const bool mlsi = c.inequality == "mlsi";
    add_distribution_trials(
        c, true,
        [tol, mlsi](const Distribution& nu, const std::string& label) {
          InequalityReport r = mlsi ? check_mlsi(nu, tol) : check_hypercube_hwi(nu, tol);
          r.family = label;
          return std::vector<InequalityReport>{std::move(r)};
        },
        tasks);
  } else if (c.command == "check-torus") {
    add_distribution_trials(
        c, false,
        [tol](const Distribution& nu, const std::string& label) {
          InequalityReport r = check_torus_hwi(nu, tol);
          r.family = label;
          return std::vector<InequalityReport>{std::move(r)};
        },
        tasks);
  } else if (c.command == "check-flow") {
    const auto grid = c.effective_t();
    add_distribution_trials(
        c, c.space == "hypercube",
        [tol, grid](const Distribution& nu, const std::string& label) {
          auto out = check_flow_bounds(nu, grid, tol);
          for (auto& r : out) r.family = label + ";" + r.family;
          return out;
        },
        tasks);
  } else if (c.command == "check-bessel") {
    add_bessel_tasks(c, tasks);
  } else if (c.command == "transport") {
    add_transport_trials(c, tasks);
  } else {
    add_simulation_tasks(c, tasks);
  }

  std::vector<std::vector<InequalityReport>> slots(tasks.size());
  parallel_for(tasks.size(), c.threads, [&](std::size_t i) { slots[i] = tasks[i](); });
  std::vector<InequalityReport> records;
  for (auto& slot : slots) {
    for (auto& r : slot) {
      r.trial_id = records.size();
      records.push_back(std::move(r));
    }
  }
  return records;
}

// --- report writers -------------------------------------------------------

namespace {

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json opt_json(const std::optional<double>& v) {
  return v ? number_or_string(*v) : json(nullptr);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<InequalityReport>& records,
               const CampaignSummary& summary) {
  out << "trial_id,space,n,family,H,I,W1,W2,Wc,applicable,vacuous,lhs,rhs,margin,verdict\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.space << ',' << r.n << ',' << r.family << ','
        << opt(r.H) << ',' << opt(r.I) << ',' << opt(r.W1) << ',' << opt(r.W2)
        << ',' << opt(r.Wc) << ',' << (r.applicable ? "true" : "false") << ','
        << (r.vacuous ? "true" : "false") << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.margin) << ','
        << to_string(r.verdict) << '\n';
  }
  out << "# summary pass=" << summary.pass
      << " vacuous-pass=" << summary.vacuous_pass
      << " not-applicable=" << summary.not_applicable
      << " FAIL=" << summary.fail
      << " min_margin=" << format_double(summary.min_margin) << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<InequalityReport>& records,
                 const CampaignSummary& summary) {
  for (const auto& r : records) {
    json j;
    j["trial_id"] = r.trial_id;
    j["space"] = r.space;
    j["n"] = r.n;
    j["family"] = r.family;
    j["H"] = opt_json(r.H);
    j["I"] = opt_json(r.I);
    j["W1"] = opt_json(r.W1);
    j["W2"] = opt_json(r.W2);
    j["Wc"] = opt_json(r.Wc);
    j["applicable"] = r.applicable;
    j["vacuous"] = r.vacuous;
    j["lhs"] = number_or_string(r.lhs);
    j["rhs"] = number_or_string(r.rhs);
    j["margin"] = number_or_string(r.margin);
    j["verdict"] = to_string(r.verdict);
    out << j.dump() << '\n';
  }
  json s;
  s["summary"] = true;
  s["pass"] = summary.pass;
  s["vacuous-pass"] = summary.vacuous_pass;
  s["not-applicable"] = summary.not_applicable;
  s["FAIL"] = summary.fail;
  s["min_margin"] = number_or_string(summary.min_margin);
  out << s.dump() << '\n';
}

namespace {

// Empty result means standard output.
std::string output_path(const CampaignConfig& config) {
  std::string path = config.output;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      path = (std::filesystem::path(dir) / (config.command + "." + config.format)).string();
    }
  }
  return path == "-" ? std::string() : path;
}

}  // namespace

int write_report(const CampaignConfig& config,
                 const std::vector<InequalityReport>& records, std::ostream& out,
                 std::ostream& err, double seconds) {
  const std::string path = output_path(config);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!path.empty()) {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "hwi: cannot open output path '" << path << "' for writing\n";
      return 2;
    }
    sink = &file;
  }

  CampaignSummary summary;
  for (const auto& r : records) summary.add(r);
  if (config.format == "jsonl") {
    write_jsonl(*sink, records, summary);
  } else {
    write_csv(*sink, records, summary);
  }
  sink->flush();
  if (!*sink) {
    err << "hwi: failed writing report\n";
    return 2;
  }

  // Runtime goes to stderr so reports stay byte-identical across runs.
  err << "hwi: " << config.command << ": " << summary.total() << " records, "
      << summary.pass << " pass, " << summary.vacuous_pass << " vacuous-pass, "
      << summary.not_applicable << " not-applicable, " << summary.fail
      << " FAIL, min margin " << format_double(summary.min_margin) << ", "
      << seconds << " s\n";
  for (const auto& r : records) {
    if (r.verdict == Verdict::Fail) {
      err << "hwi: FAIL trial " << r.trial_id << " " << r.space << ":" << r.n
          << " " << r.family << " margin " << format_double(r.margin) << '\n';
    }
  }
  return summary.fail == 0 ? 0 : 1;
}

int run(const CampaignConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    err << "hwi: configuration error: " << e.what() << '\n';
    return 2;
  }
  // Fail before the campaign rather than after it.
  if (const std::string path = output_path(config); !path.empty()) {
    std::ofstream probe(path, std::ios::binary | std::ios::app);
    if (!probe) {
      err << "hwi: cannot open output path '" << path << "' for writing\n";
      return 2;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<InequalityReport> records;
  try {
    records = run_campaign(config);
  } catch (const ConfigError& e) {
    err << "hwi: configuration error: " << e.what() << '\n';
    return 2;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return write_report(config, records, out, err, seconds);
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Verification campaigns for discrete HWI inequalities", "hwi"};
  std::string command, config_path, sizes, times;
  std::vector<std::string> families;
  CampaignConfig flags;
  app.add_option("command", command, "check-hypercube | check-torus | check-bessel | "
                                     "check-flow | transport | simulate");
  app.add_option("--config", config_path, "JSON config file (same keys as the flags)");
  app.add_option("--n", sizes, "sizes: 3..20, 4,8,16 or mixed");
  app.add_option("--family", families,
                 "dirichlet:<a> | bernoulli[:p] | sparse:<k> | point-mass[:x|:all] | "
                 "pushforward:<t>:<base>; repeatable");
  app.add_option("--trials", flags.trials, "trials per size and family");
  app.add_option("--seed", flags.seed, "campaign seed");
  app.add_option("--t", times, "comma-separated times");
  app.add_option("--output", flags.output, "report path, '-' for stdout");
  app.add_option("--format", flags.format, "csv | jsonl");
  app.add_option("--tol", flags.tol, "margin tolerance");
  app.add_option("--threads", flags.threads, "worker threads");
  app.add_option("--space", flags.space, "hypercube | torus");
  app.add_option("--inequality", flags.inequality, "hwi | mlsi (check-hypercube)");
  app.add_option("--n-max", flags.n_max, "largest Bessel order (check-bessel)");
  app.add_option("--d-max", flags.d_max, "largest shift for unimodal laws (check-bessel)");
  app.add_option("--samples", flags.samples, "Monte Carlo samples (simulate)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hwi: " << e.what() << '\n';
    return 2;
  }

  CampaignConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      config = CampaignConfig::from_json(buffer.str());
    }
    if (!command.empty()) config.command = command;
    if (command.empty() && config_path.empty()) {
      throw ConfigError("missing command");
    }
    if (app.count("--n")) config.n = parse_size_list(sizes);
    if (app.count("--family")) config.family = families;
    if (app.count("--trials")) config.trials = flags.trials;
    if (app.count("--seed")) config.seed = flags.seed;
    if (app.count("--t")) config.t = parse_real_list(times);
    if (app.count("--output")) config.output = flags.output;
    if (app.count("--format")) config.format = flags.format;
    if (app.count("--tol")) config.tol = flags.tol;
    if (app.count("--threads")) config.threads = flags.threads;
    if (app.count("--space")) config.space = flags.space;
    if (app.count("--inequality")) config.inequality = flags.inequality;
    if (app.count("--n-max")) config.n_max = flags.n_max;
    if (app.count("--d-max")) config.d_max = flags.d_max;
    if (app.count("--samples")) config.samples = flags.samples;
  } catch (const ConfigError& e) {
    err << "hwi: configuration error: " << e.what() << '\n';
    return 2;
  }
  try {
    return run(config, out, err);
  } catch (const std::exception& e) {
    err << "hwi: error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hwi
