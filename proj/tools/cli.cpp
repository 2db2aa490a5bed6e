// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The lsbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsbc/asymptotic.hpp"
#include "lsbc/channel.hpp"
#include "lsbc/numerics.hpp"
#include "lsbc/selection.hpp"
#include "lsbc/zfbf.hpp"
#include "lsbc/zfdpc.hpp"
#include "svg.hpp"

namespace lsbc::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + s + "' in '" + spec + "'");
    }
    if (used != s.size()) throw UsageError("bad number '" + s + "' in '" + spec + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw UsageError("grid '" + spec + "' must be a number or lo:hi:n");
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double n = to_double(parts[2]);
  if (!(n >= 1.0) || n != std::floor(n)) throw UsageError("grid '" + spec + "': n must be a positive integer");
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  return out;
}

namespace {

const char* const kVersion = LSBC_VERSION;

std::vector<double> expand(const std::vector<std::string>& specs) {
  std::vector<double> out;
  for (const auto& s : specs) {
    const auto g = parse_grid(s);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double p) { return 10.0 * std::log10(p); }

// --p / --p-db, mutually exclusive.
struct PowerArgs {
  std::vector<std::string> linear;
  std::vector<std::string> db;

  void attach(CLI::App* app) {
    auto* a = app->add_option("--p", linear, "transmit power, linear (number or lo:hi:n)");
    auto* b = app->add_option("--p-db", db, "transmit power in dB (number or lo:hi:n)");
    a->excludes(b);
    b->excludes(a);
  }

  // Sorted, de-duplicated linear powers.
  [[nodiscard]] std::vector<double> resolve() const {
    if (linear.empty() && db.empty()) throw UsageError("one of --p or --p-db is required");
    std::vector<double> p = expand(linear);
    for (double d : expand(db)) p.push_back(db_to_linear(d));
    for (double v : p)
      if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("power must be finite and non-negative");
    return sorted_unique(p);
  }
};

struct Units {
  std::string name = "bits";
  void attach(CLI::App* app) {
    app->add_option("--units", name, "bits or nats")->check(CLI::IsMember({"bits", "nats"}));
  }
  [[nodiscard]] double apply(double bits) const { return name == "nats" ? to_nats(bits) : bits; }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw UsageError("failed writing '" + path + "'");
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line + '\n';
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

// ---------------------------------------------------------------- asym

struct AsymCmd {
  PowerArgs power;
  double sbar = 1.0;
  double rbar = 0.0;
  double tol = 1e-8;
  Units units;

  void attach(CLI::App* app) {
    power.attach(app);
    app->add_option("--sbar", sbar, "fraction of active users, in (0, 1]")->capture_default_str();
    app->add_option("--rbar", rbar, "feedback bits per user per antenna")->required();
    app->add_option("--tol", tol, "quadrature tolerance")->capture_default_str();
    units.attach(app);
  }

  int run(std::ostream& out) const {
    const auto p = power.resolve();
    if (p.size() != 1) throw UsageError("asym takes a single power");
    out << format_double(units.apply(rho(AsymptoticParams{p[0], sbar, rbar}, tol))) << '\n';
    return kExitOk;
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  PowerArgs power;
  std::vector<std::string> rbar;
  std::vector<std::string> sbar{"1"};
  bool optimize = false;
  Units units;
  std::string out_path, svg_path;

  void attach(CLI::App* app) {
    power.attach(app);
    app->add_option("--rbar", rbar, "feedback rates (number or lo:hi:n)")->required();
    auto* s = app->add_option("--sbar", sbar, "user fractions (number or lo:hi:n)");
    app->add_flag("--optimize", optimize, "replace the sbar grid with the optimal sbar for each (P, rbar)")
        ->excludes(s);
    units.attach(app);
    app->add_option("--out", out_path, "CSV destination (default stdout)");
    app->add_option("--svg", svg_path, "write an SVG plot here");
  }

  int run(std::ostream& out) const {
    const auto ps = power.resolve();
    const auto rs = sorted_unique(expand(rbar));
    const auto ss = sorted_unique(expand(sbar));
    std::string csv = csv_row({"P", "rbar", "sbar", units.name == "nats" ? "rho_nats" : "rho_bits"});
    std::vector<Series> plot;
    const bool by_sbar = !optimize && ss.size() > 1;
    for (double r : rs) {
      if (by_sbar) continue;
      plot.push_back({"rbar = " + format_double(r), {}, {}});
    }
    for (double p : ps)
      for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        const double r = rs[ri];
        if (by_sbar) plot.push_back({"P = " + format_double(p) + ", rbar = " + format_double(r), {}, {}});
        std::vector<std::pair<double, double>> points;
        if (optimize) {
          const SbarOptimum o = sbar_opt(p, r);
          points.emplace_back(o.sbar, o.rho);
        } else {
          for (double s : ss) points.emplace_back(s, rho(AsymptoticParams{p, s, r}));
        }
        for (const auto& [s, v] : points) {
          csv += csv_row({format_double(p), format_double(r), format_double(s), format_double(units.apply(v))});
          Series& series = by_sbar ? plot.back() : plot[ri];
          series.x.push_back(by_sbar ? s : linear_to_db(p));
          series.y.push_back(optimize ? s : units.apply(v));
        }
      }
    write_output(out_path, csv, out);
    if (!svg_path.empty()) {
      const PlotSpec spec{optimize ? "Optimal fraction of active users" : "Asymptotic throughput",
                          by_sbar ? "sbar" : "P (dB)",
                          optimize ? "sbar_opt" : "rho (" + units.name + ")"};
      write_output(svg_path, render_svg(spec, plot), out);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- simulate

std::vector<std::size_t> to_counts(const std::vector<double>& v, const char* what) {
  std::vector<std::size_t> out;
  for (double x : v) {
    if (!(x >= 1.0) || x != std::floor(x)) throw UsageError(std::string(what) + " must be positive integers");
    out.push_back(static_cast<std::size_t>(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SimulateCmd {
  std::size_t K = 0;
  double r = -1.0, rbar = -1.0;
  std::vector<std::string> s;
  PowerArgs power;
  std::size_t trials = 500, inner = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string scheme = "zfdpc";
  std::string form = "exact";
  bool perfect = false;
  Units units;
  std::string out_path, json_path, svg_path;

  void attach(CLI::App* app) {
    app->add_option("--K", K, "antennas = users")->required()->check(CLI::PositiveNumber);
    auto* ro = app->add_option("--r", r, "feedback bits per user");
    auto* rb = app->add_option("--rbar", rbar, "feedback bits per user per antenna (r = rbar K)");
    ro->excludes(rb);
    rb->excludes(ro);
    app->add_option("--s", s, "active users (number or lo:hi:n; default K)");
    power.attach(app);
    app->add_option("--trials", trials, "outer Monte Carlo trials")->capture_default_str();
    app->add_option("--inner", inner, "conditional draws per user (zfdpc)")->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    app->add_option("--scheme", scheme, "zfdpc or zfbf")->check(CLI::IsMember({"zfdpc", "zfbf"}));
    app->add_option("--form", form, "inflation denominator: exact or printed")
        ->check(CLI::IsMember({"exact", "printed"}));
    app->add_flag("--perfect-csit", perfect, "force zero quantization error");
    units.attach(app);
    app->add_option("--out", out_path, "CSV destination (default stdout)");
    app->add_option("--json", json_path, "write a JSON summary array here");
    app->add_option("--svg", svg_path, "write an SVG plot here");
  }

  int run(std::ostream& out) const {
    double bits = r;
    if (rbar >= 0.0) bits = rbar * static_cast<double>(K);
    if (bits < 0.0 && !perfect) throw UsageError("one of --r or --rbar is required without --perfect-csit");
    if (bits < 0.0) bits = 0.0;
    const auto ps = power.resolve();
    const auto ss = s.empty() ? std::vector<std::size_t>{K} : to_counts(expand(s), "--s");
    const MonteCarloOptions opts{trials, inner, seed, threads,
                                 form == "exact" ? InflationDenominator::kExact : InflationDenominator::kAsPrinted};

    std::string csv = csv_row({"scheme", "K", "r", "s", "P", "mean", "stderr", "interference"});
    ordered_json summaries = ordered_json::array();
    std::vector<Series> plot;
    const bool by_s = ss.size() > 1;
    if (!by_s) plot.push_back({scheme + ", s = " + std::to_string(ss[0]), {}, {}});
    for (double p : ps) {
      if (by_s) plot.push_back({"P = " + format_double(linear_to_db(p)) + " dB", {}, {}});
      for (std::size_t si : ss) {
        const SystemConfig cfg{K, p, si, bits, perfect};
        const ThroughputEstimate e = scheme == "zfdpc" ? throughput_mc(cfg, opts) : zfbf_throughput_mc(cfg, opts);
        const double mean = units.apply(e.mean);
        const double se = units.apply(e.std_error);
        csv += csv_row({scheme, std::to_string(K), format_double(bits), std::to_string(si), format_double(p),
                        format_double(mean), format_double(se), format_double(e.max_leakage)});
        ordered_json per_user = ordered_json::array();
        for (double v : e.per_user) per_user.push_back(number(units.apply(v)));
        ordered_json config = {{"K", K},
                               {"r", bits},
                               {"s", si},
                               {"P", p},
                               {"perfect_csit", perfect},
                               {"trials", trials},
                               {"units", units.name}};
        if (scheme == "zfdpc") {
          config["inner"] = inner;
          config["form"] = form;
        }
        summaries.push_back({{"config", config},
                             {"seed", seed},
                             {"scheme", scheme},
                             {"mean", number(mean)},
                             {"stderr", number(se)},
                             {"per_user", per_user},
                             {"version", kVersion}});
        plot.back().x.push_back(by_s ? static_cast<double>(si) : linear_to_db(p));
        plot.back().y.push_back(mean);
      }
    }
    write_output(out_path, csv, out);
    if (!json_path.empty()) write_output(json_path, summaries.dump(2) + '\n', out);
    if (!svg_path.empty()) {
      const PlotSpec spec{"Monte Carlo throughput, K = " + std::to_string(K), by_s ? "s" : "P (dB)",
                          "throughput (" + units.name + ")"};
      write_output(svg_path, render_svg(spec, plot), out);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- compare

struct CompareCmd {
  std::size_t K = 32;
  double rbar = 0.0;
  PowerArgs power;
  std::vector<std::string> s;
  std::size_t trials = 500;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  double flag_below = 0.05;
  std::string out_path, json_path, svg_path;

  void attach(CLI::App* app) {
    app->add_option("--K", K, "antennas = users for the ZFBF simulation")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--rbar", rbar, "feedback bits per user per antenna")->required();
    power.attach(app);
    app->add_option("--s", s, "ZFBF user counts searched (default 1..K)");
    app->add_option("--trials", trials, "Monte Carlo trials per ZFBF point")->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    app->add_option("--flag-below", flag_below, "flag rows whose ZFBF throughput (bits) is at or below this")
        ->capture_default_str();
    app->add_option("--out", out_path, "CSV destination (default stdout)");
    app->add_option("--json", json_path, "write per-row details as JSON here");
    app->add_option("--svg", svg_path, "write an SVG plot here");
  }

  int run(std::ostream& out) const {
    const auto ps = power.resolve();
    std::vector<std::size_t> ss;
    if (s.empty())
      for (std::size_t k = 1; k <= K; ++k) ss.push_back(k);
    else
      ss = to_counts(expand(s), "--s");
    const double bits = rbar * static_cast<double>(K);
    const MonteCarloOptions opts{trials, 1, seed, threads};

    std::string csv = csv_row({"P_dB", "impr_pct", "stderr"});
    ordered_json rows = ordered_json::array();
    Series series{"ZFDPC over ZFBF", {}, {}};
    for (double p : ps) {
      const SbarOptimum dpc = sbar_opt(p, rbar);
      ThroughputEstimate best;
      std::size_t best_s = 0;
      for (std::size_t si : ss) {
        const ThroughputEstimate e = zfbf_throughput_mc(SystemConfig{K, p, si, bits}, opts);
        if (best_s == 0 || e.mean > best.mean) {
          best = e;
          best_s = si;
        }
      }
      const bool flagged = !(best.mean > flag_below);
      double impr = std::nan(""), se = std::nan("");
      if (!flagged) {
        impr = 100.0 * (dpc.rho - best.mean) / best.mean;
        se = 100.0 * dpc.rho * best.std_error / (best.mean * best.mean);
      }
      const double p_db = linear_to_db(p);
      csv += csv_row({format_double(p_db), format_double(impr), format_double(se)});
      rows.push_back({{"P_dB", number(p_db)},
                      {"zfdpc_rho", dpc.rho},
                      {"zfdpc_sbar", dpc.sbar},
                      {"zfbf_mean", best.mean},
                      {"zfbf_stderr", best.std_error},
                      {"zfbf_s", best_s},
                      {"impr_pct", number(impr)},
                      {"stderr", number(se)},
                      {"flagged", flagged}});
      series.x.push_back(p_db);
      series.y.push_back(impr);
    }
    write_output(out_path, csv, out);
    if (!json_path.empty()) {
      const ordered_json doc = {{"config", {{"K", K}, {"rbar", rbar}, {"trials", trials}, {"s", ss},
                                            {"flag_below", flag_below}, {"units", "bits"}}},
                                {"seed", seed},
                                {"scheme", "zfdpc-vs-zfbf"},
                                {"rows", rows},
                                {"version", kVersion}};
      write_output(json_path, doc.dump(2) + '\n', out);
    }
    if (!svg_path.empty())
      write_output(svg_path, render_svg({"ZFDPC improvement over ZFBF", "P (dB)", "improvement (%)"}, {series}), out);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- optimize

struct OptimizeCmd {
  PowerArgs power;
  std::vector<std::string> rbar;
  std::size_t K = 0;
  double tol = 1e-6;
  Units units;
  std::string out_path, svg_path;

  void attach(CLI::App* app) {
    power.attach(app);
    app->add_option("--rbar", rbar, "feedback rates (number or lo:hi:n)")->required();
    app->add_option("--K", K, "also report s_opt = round(sbar_opt K)")->check(CLI::PositiveNumber);
    app->add_option("--tol", tol, "golden-section tolerance in sbar")->capture_default_str();
    units.attach(app);
    app->add_option("--out", out_path, "CSV destination (default stdout)");
    app->add_option("--svg", svg_path, "write an SVG plot of sbar_opt here");
  }

  int run(std::ostream& out) const {
    const auto ps = power.resolve();
    const auto rs = sorted_unique(expand(rbar));
    std::vector<std::string> header{"P", "rbar", "sbar_opt", units.name == "nats" ? "rho_opt_nats" : "rho_opt_bits"};
    if (K > 0) header.insert(header.end(), {"K", "s_opt"});
    std::string csv = csv_row(header);
    std::vector<Series> plot;
    for (double r : rs) plot.push_back({"rbar = " + format_double(r), {}, {}});
    for (double p : ps)
      for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        const SbarOptimum o = sbar_opt(p, rs[ri], tol);
        std::vector<std::string> row{format_double(p), format_double(rs[ri]), format_double(o.sbar),
                                     format_double(units.apply(o.rho))};
        if (K > 0) {
          row.push_back(std::to_string(K));
          row.push_back(std::to_string(s_opt_finite(K, rs[ri] * static_cast<double>(K), p)));
        }
        csv += csv_row(row);
        plot[ri].x.push_back(linear_to_db(p));
        plot[ri].y.push_back(o.sbar);
      }
    write_output(out_path, csv, out);
    if (!svg_path.empty())
      write_output(svg_path, render_svg({"Optimal fraction of active users", "P (dB)", "sbar_opt"}, plot), out);
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large-system throughput of zeroforcing dirty-paper coding with limited feedback", "lsbc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AsymCmd asym;
  SweepCmd sweep;
  SimulateCmd simulate;
  CompareCmd compare;
  OptimizeCmd optimize;
  auto* a = app.add_subcommand("asym", "asymptotic throughput at one operating point");
  auto* sw = app.add_subcommand("sweep", "asymptotic throughput over a grid of (P, rbar, sbar)");
  auto* si = app.add_subcommand("simulate", "finite-K Monte Carlo throughput");
  auto* co = app.add_subcommand("compare", "percentage gain of ZFDPC over ZFBF");
  auto* op = app.add_subcommand("optimize", "optimal fraction of active users");
  asym.attach(a);
  sweep.attach(sw);
  simulate.attach(si);
  compare.attach(co);
  optimize.attach(op);

  // CLI11 consumes the vector form back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (a->parsed()) return asym.run(out);
    if (sw->parsed()) return sweep.run(out);
    if (si->parsed()) return simulate.run(out);
    if (co->parsed()) return compare.run(out);
    if (op->parsed()) return optimize.run(out);
  } catch (const NumericDomainError& e) {
    err << "lsbc: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const SingularMatrixError& e) {
    err << "lsbc: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const UsageError& e) {
    err << "lsbc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "lsbc: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lsbc: error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace lsbc::cli
