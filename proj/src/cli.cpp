#include "qfithermo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace qfithermo::cli {

using nlohmann::json;

namespace {

constexpr double kVerifySlack = 1e-10;

// Reads fields of one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) throw ValidationError(context_ + ": expected a JSON object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <typename T>
  T get(const char* key, T fallback) {
    const json* v = find(key);
    return v ? convert<T>(*v, key) : fallback;
  }

  template <typename T>
  T require(const char* key) {
    const json* v = find(key);
    if (!v) throw ValidationError(context_ + ": missing required key '" + key + "'");
    return convert<T>(*v, key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ValidationError(context_ + ": unknown key '" + key + "'");
    }
  }

  const std::string& context() const { return context_; }

 private:
  template <typename T>
  T convert(const json& v, const char* key) const {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ValidationError(context_ + ": '" + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw ValidationError(context_ + ": '" + key + "' must be an integer");
    }
    try {
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ValidationError(context_ + ": bad value for '" + key + "': " + e.what());
    }
  }

  const json& obj_;
  std::string context_;
  std::set<std::string> seen_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;  // optional leading text column
};

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    bool first = true;
    if (!table.labels.empty()) {
      out += table.labels[r];
      first = false;
    }
    for (double x : table.rows[r]) {
      if (!first) out += ',';
      out += format_number(x);
      first = false;
    }
    out += '\n';
  }
  return out;
}

json rounded(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

json render_json(const Table& table) {
  json rows = json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    json row = json::object();
    std::size_t c = 0;
    if (!table.labels.empty()) row[table.header[c++]] = table.labels[r];
    for (double x : table.rows[r]) row[table.header[c++]] = rounded(x);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const json& doc) {
  return doc.dump(2) + "\n";
}

double entropy_unit(const OutputOptions& o) {
  return o.bits ? std::numbers::ln2 : 1.0;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw NumericalError("verify: " + what);
}

RabiConfig parse_rabi_fields(Fields& f) {
  RabiConfig cfg;
  cfg.qubit_splitting = f.get("qubit_splitting", cfg.qubit_splitting);
  cfg.mode_frequency = f.get("mode_frequency", cfg.mode_frequency);
  cfg.coupling = f.get("coupling", cfg.coupling);
  cfg.temperature = f.get("temperature", cfg.temperature);
  cfg.nmax = f.get("nmax", cfg.nmax);
  cfg.encoding_time = f.get("encoding_time", cfg.encoding_time);
  cfg.c0 = f.get("c0", cfg.c0);
  cfg.lambda_samples = f.get("lambda_samples", cfg.lambda_samples);
  cfg.erasure_time = f.get("erasure_time", cfg.erasure_time);
  return cfg;
}

DickeFamily family_from(Fields& f, FamilyKind kind) {
  DickeFamily fam;
  fam.kind = kind;
  fam.gamma = f.get("gamma", kDefaultSqueezeExponent);
  fam.nu = f.get("nu", kDefaultGhzWidth);
  if (!(fam.gamma > 0.0)) throw ValidationError(f.context() + ": gamma must be positive");
  if (!(fam.nu > 0.0)) throw ValidationError(f.context() + ": nu must be positive");
  return fam;
}

FamilyKind family_kind(const std::string& name) {
  const auto kind = parse_family(name);
  if (!kind) throw ValidationError("unknown state family '" + name + "'");
  return *kind;
}

std::complex<double> amplitude_from(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError("state.coefficients: entries must be numbers or [re, im] pairs");
}

// Balanced computational-to-Fourier basis, used as a second measurement basis
// when auditing the outcome-record inequality.
ComplexMatrix fourier_basis(Eigen::Index d) {
  ComplexMatrix f(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      f(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                           2.0 * std::numbers::pi * static_cast<double>(r * c) / static_cast<double>(d));
    }
  }
  return f;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  if (dynamic_cast<const json::exception*>(&e)) return kExitValidation;
  return 1;
}

nlohmann::json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Parsing

BoundsRequest parse_bounds(const json& config) {
  Fields top(config, "bounds config");
  BoundsRequest req;
  req.t = top.get("t", req.t);
  req.kbt = top.get("kbt", req.kbt);
  req.entropy_final = top.get("entropy_final", req.entropy_final);

  const json* state = top.find("state");
  if (!state) throw ValidationError("bounds config: missing required key 'state'");
  Fields s(*state, "state");
  if (const json* coeffs = s.find("coefficients")) {
    if (!coeffs->is_array() || coeffs->size() < 2) {
      throw ValidationError("state.coefficients: need an array of at least two amplitudes");
    }
    req.coefficients.resize(static_cast<Eigen::Index>(coeffs->size()));
    for (std::size_t k = 0; k < coeffs->size(); ++k) req.coefficients(k) = amplitude_from((*coeffs)[k]);
    if (s.find("family") || s.find("N")) {
      throw ValidationError("state: give either 'coefficients' or 'family' + 'N', not both");
    }
    (void)dicke_state(req.coefficients);  // normalization check
  } else {
    const FamilyKind kind = family_kind(s.require<std::string>("family"));
    const int n = s.require<int>("N");
    const DickeFamily fam = family_from(s, kind);
    const std::vector<double> p = family_distribution(fam, n);
    req.coefficients = dicke_state_from_distribution(p).amplitudes();
  }
  s.finish();

  const Eigen::Index dim = req.coefficients.size();
  const json* gen = top.find("generator");
  std::string kind = "jz";
  if (gen) {
    Fields g(*gen, "generator");
    kind = g.get<std::string>("type", "jz");
    if (kind == "spectrum") {
      req.spectrum = g.require<std::vector<double>>("spectrum");
    } else if (kind != "jz") {
      throw ValidationError("generator.type must be 'jz' or 'spectrum'");
    }
    g.finish();
  }
  if (kind == "jz") {
    const RealVector jz = SpinRep{static_cast<int>(dim - 1)}.jz_spectrum();
    req.spectrum.assign(jz.data(), jz.data() + jz.size());
  }
  if (static_cast<Eigen::Index>(req.spectrum.size()) != dim) {
    throw ValidationError("generator.spectrum has " + std::to_string(req.spectrum.size()) +
                          " entries but the state has dimension " + std::to_string(dim));
  }
  top.finish();
  if (!(req.t > 0.0)) throw ValidationError("bounds config: t must be positive");
  if (!(req.kbt >= 0.0)) throw ValidationError("bounds config: kbt must be non-negative");
  if (!(req.entropy_final >= 0.0)) throw ValidationError("bounds config: entropy_final must be non-negative");
  return req;
}

RabiRequest parse_rabi(const json& config) {
  Fields f(config, "rabi config");
  RabiRequest req;
  req.config = parse_rabi_fields(f);
  req.c0_list = f.get<std::vector<double>>("c0_list", {0.316, 0.447, 0.548, 0.632, 0.707});
  f.finish();
  req.config.validate();
  if (req.c0_list.empty()) throw ValidationError("rabi config: c0_list is empty");
  for (double c0 : req.c0_list) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) throw ValidationError("rabi config: c0 values must lie in [0, 1]");
  }
  return req;
}

ScanRequest parse_scan(const json& config) {
  Fields f(config, "erasure-scan config");
  ScanRequest req;
  req.config = parse_rabi_fields(f);
  req.tau_min = f.get("tau_min", req.tau_min);
  req.tau_max = f.get("tau_max", req.tau_max);
  req.steps = f.get("steps", req.steps);
  f.finish();
  req.config.validate();
  if (!(req.tau_min >= 0.0 && req.tau_min < req.tau_max)) {
    throw ValidationError("erasure-scan config: need 0 <= tau_min < tau_max");
  }
  if (req.steps < 2) throw ValidationError("erasure-scan config: steps must be at least 2");
  return req;
}

DickeRequest parse_dicke(const json& config) {
  Fields f(config, "dicke config");
  DickeRequest req;
  const auto names = f.get<std::vector<std::string>>("families", {"product", "squeezed", "twin_fock", "ghz_like"});
  if (names.empty()) throw ValidationError("dicke config: families is empty");
  for (const std::string& name : names) req.families.push_back(family_from(f, family_kind(name)));
  req.qubits = f.get<std::vector<int>>("N_list", {8, 16, 32, 64, 128, 256, 512, 1024});
  req.fit_min_qubits = f.get("fit_min_N", req.fit_min_qubits);
  if (const json* pair = f.find("saturation_pair")) {
    const auto v = pair->get<std::vector<int>>();
    if (v.size() != 2 || !(v[0] >= 1 && v[0] < v[1])) {
      throw ValidationError("dicke config: saturation_pair must be [N_low, N_high] with N_low < N_high");
    }
    req.saturation_pair = std::make_pair(v[0], v[1]);
  }
  f.finish();
  if (req.qubits.empty()) throw ValidationError("dicke config: N_list is empty");
  for (int n : req.qubits) {
    if (n < 1) throw ValidationError("dicke config: N values must be positive");
  }
  for (const DickeFamily& fam : req.families) {
    if (fam.kind != FamilyKind::twin_fock) continue;
    for (int n : req.qubits) {
      if (n % 2 != 0) throw ValidationError("dicke config: twin_fock needs even N, got " + std::to_string(n));
    }
  }
  return req;
}

// ---------------------------------------------------------------------------
// Commands

std::string cmd_bounds(const BoundsRequest& req, const OutputOptions& opt) {
  const StateVector psi = dicke_state(req.coefficients);
  const Generator g = Generator::diagonal(req.spectrum, req.t);
  const BoundReport r = ensemble_entropy_report(psi, g, req.kbt, req.entropy_final);

  if (opt.verify) {
    const ComplexMatrix rho_s = rho_s_dephase(psi.projector(), g);
    const ComplexMatrix id = ComplexMatrix::Identity(g.dim(), g.dim());
    for (const ComplexMatrix& basis : {id, fourier_basis(g.dim())}) {
      check(measurement_record_entropy(rho_s, basis) >= r.entropy_rho_s - kVerifySlack,
            "outcome-record entropy below ensemble entropy");
    }
    check(r.entropy_rho_s >= r.entropy_floor - kVerifySlack, "ensemble entropy below its QFI floor");
    check(r.entropy_floor <= std::numbers::ln2 + kVerifySlack, "QFI floor exceeds log 2");
  }

  const double u = entropy_unit(opt);
  Table t;
  t.header = {"fq", "fq_over_t2", "seminorm", "entropy_rho_s", "entropy_final",
              "entropy_floor", "deficit", "heat_floor", "kbt"};
  t.rows.push_back({r.fq, r.fq_over_t2, r.seminorm, r.entropy_rho_s / u, r.entropy_final / u,
                    r.entropy_floor / u, r.deficit / u, r.heat_floor, r.kbt});
  if (opt.format == Format::json) return dump(render_json(t).front());
  return render_csv(t);
}

std::string cmd_rabi(const RabiRequest& req, const OutputOptions& opt) {
  const std::vector<RabiOutcome> rows = run_erasure_sweep(req.config, req.c0_list, opt.threads);
  if (opt.verify) {
    for (const RabiOutcome& o : rows) {
      check(o.audit_passed(), "erasure heat below its floor at c0 = " + format_number(o.c0));
      check(o.erasure_quality >= 0.0 && o.erasure_quality <= 1.0, "erasure quality outside [0, 1]");
      check(std::abs(o.fq_over_t2 - 4.0 * o.c0 * o.c0 * (1.0 - o.c0 * o.c0)) < kVerifySlack,
            "QFI disagrees with 4 c0^2 c1^2");
    }
  }
  const double u = entropy_unit(opt);
  Table t;
  t.header = {"c0", "fq_over_t2", "heat_avg", "entropy_final_avg", "entropy_of_avg", "bound_floor",
              "erasure_quality"};
  for (const RabiOutcome& o : rows) {
    t.rows.push_back({o.c0, o.fq_over_t2, o.heat_avg, o.entropy_final_avg / u, o.entropy_of_avg / u,
                      o.bound_floor, o.erasure_quality});
  }
  if (opt.format == Format::json) return dump(json{{"rows", render_json(t)}});
  return render_csv(t);
}

std::string cmd_erasure_scan(const ScanRequest& req, const OutputOptions& opt) {
  const ErasureScan scan = find_erasure_time(req.config, req.tau_min, req.tau_max, req.steps, opt.threads);
  if (opt.verify) {
    for (const ScanPoint& p : scan.points) {
      check(p.quality >= 0.0 && p.quality <= 1.0, "erasure quality outside [0, 1]");
      check(p.quality >= scan.quality, "reported minimum is not the grid minimum");
    }
  }
  Table points;
  points.header = {"tau", "erasure_quality"};
  for (const ScanPoint& p : scan.points) points.rows.push_back({p.tau, p.quality});
  Table best;
  best.header = {"tau_star", "erasure_quality"};
  best.rows.push_back({scan.tau_star, scan.quality});
  if (opt.format == Format::json) {
    return dump(json{{"scan", render_json(points)}, {"best", render_json(best).front()}});
  }
  return render_csv(points) + "\n" + render_csv(best);
}

std::string cmd_dicke(const DickeRequest& req, const OutputOptions& opt) {
  const double u = entropy_unit(opt);
  const std::string unit = opt.bits ? "bits" : "nats";

  Table records;
  records.header = {"family", "N", "entropy_" + unit, "weighted_fq_" + unit, "fq_over_t2", "sql_ratio"};
  Table fits;
  fits.header = {"family", "alpha", "beta", "rms_residual"};
  Table saturation;
  saturation.header = {"family", "N_low", "N_high", "entropy_delta"};

  for (const DickeFamily& fam : req.families) {
    const std::vector<SweepRecord> rows = sweep(fam, req.qubits, opt.threads);
    const std::string name(to_string(fam.kind));
    for (const SweepRecord& r : rows) {
      if (opt.verify) {
        check(r.entropy_nats >= r.weighted_fq_nats - 1e-12, "weighted QFI exceeds entropy for " + name);
        check(std::abs(r.sql_ratio * r.qubits - r.fq_over_t2) <= 1e-9 * std::max(1.0, r.fq_over_t2),
              "sql_ratio inconsistent for " + name);
      }
      records.labels.push_back(name);
      records.rows.push_back({static_cast<double>(r.qubits), r.entropy_nats / u, r.weighted_fq_nats / u,
                              r.fq_over_t2, r.sql_ratio});
    }

    if (fam.kind == FamilyKind::ghz_like) {
      std::set<int> distinct(req.qubits.begin(), req.qubits.end());
      std::optional<std::pair<int, int>> pair = req.saturation_pair;
      if (!pair && distinct.size() >= 2) pair = std::make_pair(*std::next(distinct.rbegin()), *distinct.rbegin());
      if (pair) {
        saturation.labels.push_back(name);
        saturation.rows.push_back({static_cast<double>(pair->first), static_cast<double>(pair->second),
                                   saturation_check(fam, pair->first, pair->second) / u});
      }
      continue;
    }

    std::vector<SweepRecord> fit_rows;
    std::set<int> distinct;
    for (const SweepRecord& r : rows) {
      if (r.qubits < req.fit_min_qubits) continue;
      fit_rows.push_back(r);
      distinct.insert(r.qubits);
    }
    if (fit_rows.size() < 3 || distinct.size() < 2) continue;
    const LogFit fit = fit_log(fit_rows);
    if (opt.verify) check(fit.rms_residual >= 0.0, "negative fit residual");
    fits.labels.push_back(name);
    fits.rows.push_back({fit.alpha / u, fit.beta / u, fit.rms_residual / u});
  }

  if (opt.format == Format::json) {
    return dump(json{{"records", render_json(records)}, {"fits", render_json(fits)},
                     {"saturation", render_json(saturation)}});
  }
  std::string out = render_csv(records);
  if (!fits.rows.empty()) out += "\n" + render_csv(fits);
  if (!saturation.rows.empty()) out += "\n" + render_csv(saturation);
  return out;
}

std::string run_command(std::string_view command, const json& config, const OutputOptions& options) {
  if (command == "bounds") return cmd_bounds(parse_bounds(config), options);
  if (command == "rabi") return cmd_rabi(parse_rabi(config), options);
  if (command == "dicke") return cmd_dicke(parse_dicke(config), options);
  if (command == "erasure-scan") return cmd_erasure_scan(parse_scan(config), options);
  throw ValidationError("unknown command '" + std::string(command) + "'");
}

}  // namespace qfithermo::cli
