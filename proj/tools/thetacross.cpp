// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0
//
// Operator surface. Uniform wiring across every subcommand: built-in
// defaults, then --config file, then flags, in that order; the resolved
// configuration is printed to stderr before any work starts; stdout ends
// with one machine-parsable JSON line, and certificate-path numbers appear
// as [lo, hi] endpoint pairs, never as bare midpoints. Exit codes: 0 done,
// 1 I/O failure, 2 validation failure, 3 zero table too short, 4 crossover
// found. Bare zero-table filenames resolve against $THETACROSS_ZEROS_DIR.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thetacross/config.hpp"
#include "thetacross/crossover.hpp"
#include "thetacross/sieve.hpp"
#include "thetacross/zero_finding.hpp"
#include "thetacross/zero_table.hpp"

namespace tx = thetacross;
using nlohmann::json;

namespace {

json iv(const tx::Interval& v) { return json::array({v.lo, v.hi}); }

int emit_error(const std::string& cmd, int code, const std::string& what) {
  json j;
  j["cmd"] = cmd;
  j["status"] = "error";
  j["exit"] = code;
  j["error"] = what;
  std::cout << j.dump() << "\n";
  std::cerr << "error: " << what << "\n";
  return code;
}

int emit_ok(const std::string& cmd, json j, int code = 0) {
  j["cmd"] = cmd;
  j["status"] = code == 0 ? "ok" : "crossover";
  std::cout << j.dump() << "\n";
  return code;
}

int classify_runtime(const std::string& msg) {
  for (const char* s : {"cannot open", "cannot create", "cannot write", "write failed",
                        "read failed", "append failed"})
    if (msg.find(s) != std::string::npos) return 1;
  return 2;
}

template <class Fn>
int guarded(const std::string& cmd, Fn&& fn) {
  try {
    return fn();
  } catch (const tx::TableTooShort& e) {
    return emit_error(cmd, 3, e.what());
  } catch (const std::runtime_error& e) {
    return emit_error(cmd, classify_runtime(e.what()), e.what());
  } catch (const std::exception& e) {
    return emit_error(cmd, 2, e.what());
  }
}

// Flags carry raw strings into the same typed parser the config file uses,
// so a flag and its key reject bad values with identical messages.
struct FlagBind {
  CLI::Option* opt = nullptr;
  std::string key;
  std::string value;
};

struct FlagSet {
  std::deque<FlagBind> binds;

  CLI::Option* bind(CLI::App* cmd, const char* flag, const char* key, const char* desc) {
    binds.push_back(FlagBind{nullptr, key, {}});
    FlagBind& b = binds.back();
    b.opt = cmd->add_option(flag, b.value, desc);
    return b.opt;
  }
  void apply(tx::RunConfig& cfg) const {
    for (const FlagBind& b : binds)
      if (b.opt->count()) tx::set_key(cfg, b.key, b.value, b.opt->get_name());
  }
};

const char* zeros_dir() { return std::getenv("THETACROSS_ZEROS_DIR"); }

unsigned cli_workers(const tx::RunConfig& cfg) {
  if (cfg.workers > 1024) throw std::invalid_argument("workers must lie in [0, 1024]");
  return static_cast<unsigned>(cfg.workers);
}

void emit_config(const tx::RunConfig& cfg) { std::cerr << tx::serialize_config(cfg); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f.flush()) throw std::runtime_error("write failed for " + path);
}

tx::ZeroTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char head[24] = {};
  in.read(head, sizeof head);
  bool packed = std::string_view(head, static_cast<std::size_t>(in.gcount()))
                    .starts_with("thetacross-zeros-packed");
  in.close();
  return tx::load_zeros(path, packed ? tx::ZeroFormat::packed : tx::ZeroFormat::text);
}

void save_table(const tx::ZeroTable& t, const std::string& path, const std::string& format) {
  if (format == "packed")
    tx::save_zeros_packed(t, path);
  else
    tx::save_zeros_text(t, path);
}

json table_summary(const tx::ZeroTable& t) {
  json j;
  j["count"] = t.meta.count;
  j["max_gamma"] = t.meta.max_gamma;
  j["abs_accuracy"] = t.meta.abs_accuracy;
  j["source"] = t.meta.source;
  return j;
}

int cmd_zeros_compute(tx::RunConfig& cfg) {
  if (cfg.out_path.empty()) cfg.out_path = cfg.zeros_path;
  emit_config(cfg);
  std::string out = tx::resolve_zeros_path(cfg.out_path, zeros_dir());
  std::cerr << "enclosing zeros up to t=" << cfg.zeros_t_max << "\n";
  tx::ZeroTable t = tx::compute_zeros(cfg.zeros_t_max, cfg.zeros_accuracy, cli_workers(cfg));
  save_table(t, out, cfg.zeros_format);
  char buf[160];
  std::snprintf(buf, sizeof buf, "wrote %llu enclosures to %s (max gamma %.17g)\n",
                (unsigned long long)t.meta.count, out.c_str(), t.meta.max_gamma);
  std::cout << buf;
  json j = table_summary(t);
  j["out"] = out;
  j["format"] = cfg.zeros_format;
  return emit_ok("zeros compute", j);
}

int cmd_zeros_import(tx::RunConfig& cfg, const std::string& in_path, double extra_half_width) {
  std::string in = tx::resolve_zeros_path(in_path, zeros_dir());
  if (cfg.out_path.empty())
    cfg.out_path = in_path + (cfg.zeros_format == "packed" ? ".packed" : ".enclosed.txt");
  emit_config(cfg);
  tx::ZeroTable t = load_table(in);
  if (extra_half_width > 0.0) {
    for (tx::Interval& g : t.gammas)
      g = tx::Interval(tx::detail::sub_rd(g.lo, extra_half_width),
                       tx::detail::add_ru(g.hi, extra_half_width));
    tx::finalize_table(t, t.meta.source);
  }
  std::string out = tx::resolve_zeros_path(cfg.out_path, zeros_dir());
  save_table(t, out, cfg.zeros_format);
  char buf[160];
  std::snprintf(buf, sizeof buf, "imported %llu enclosures from %s to %s\n",
                (unsigned long long)t.meta.count, in.c_str(), out.c_str());
  std::cout << buf;
  json j = table_summary(t);
  j["in"] = in;
  j["out"] = out;
  j["format"] = cfg.zeros_format;
  return emit_ok("zeros import", j);
}

int cmd_zeros_validate(tx::RunConfig& cfg, const std::string& in_path) {
  emit_config(cfg);
  std::string in = tx::resolve_zeros_path(in_path, zeros_dir());
  tx::ZeroTable t = load_table(in);
  tx::validate_table(t);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %llu enclosures, max gamma %.17g, width <= %.3g\n",
                in.c_str(), (unsigned long long)t.meta.count, t.meta.max_gamma,
                t.meta.abs_accuracy);
  std::cout << buf;
  json j = table_summary(t);
  j["path"] = in;
  return emit_ok("zeros validate", j);
}

int cmd_scan(tx::RunConfig& cfg) {
  if (cfg.out_path.empty()) cfg.out_path = "scan.csv";
  emit_config(cfg);
  tx::ZeroTable t = load_table(tx::resolve_zeros_path(cfg.zeros_path, zeros_dir()));
  std::cerr << "scanning omega in [" << cfg.scan_lo << ", " << cfg.scan_hi << "] step "
            << cfg.scan_step << "\n";
  std::vector<tx::ScanRow> rows = tx::scan(cfg.scan_lo, cfg.scan_hi, cfg.scan_step, t,
                                           cfg.bound_alpha, cfg.bound_t, cli_workers(cfg));
  write_file(cfg.out_path, tx::scan_csv(rows));
  std::size_t arg = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].sum_mid < rows[arg].sum_mid) arg = i;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu rows to %s, min sum_mid %.17g at omega %.17g\n",
                rows.size(), cfg.out_path.c_str(), rows[arg].sum_mid, rows[arg].omega);
  std::cout << buf;
  json j;
  j["rows"] = rows.size();
  j["csv"] = cfg.out_path;
  j["min_sum_mid"] = rows[arg].sum_mid;
  j["argmin_omega"] = rows[arg].omega;
  j["lb_at_min"] = json::array({rows[arg].lb_lo, rows[arg].lb_hi});
  return emit_ok("scan", j);
}

json breakdown_json(const tx::BoundBreakdown& bd) {
  json j;
  j["zero_sum"] = iv(bd.zero_sum);
  j["r1"] = iv(bd.r1);
  j["r2"] = iv(bd.r2);
  j["r3"] = iv(bd.r3);
  j["r4"] = iv(bd.r4);
  j["lower_bound"] = iv(bd.lower_bound);
  return j;
}

int cmd_certify(tx::RunConfig& cfg, bool dry_run) {
  emit_config(cfg);
  tx::BoundParams p{cfg.bound_a, cfg.bound_t, cfg.bound_alpha, cfg.bound_eta, cfg.bound_omega};
  tx::require_valid(p);
  if (dry_run) {
    if (p.A * std::abs(p.omega) >= 0x1p52)
      throw std::domain_error("phase gamma*omega would exceed the exact-reduction range");
    tx::ErrorTerms et = tx::error_terms(p);
    tx::Interval total = et.r1 + et.r2 + et.r3 + et.r4;
    char buf[160];
    std::snprintf(buf, sizeof buf, "dry run: parameters valid, R1+R2+R3+R4 <= %.17g\n", total.hi);
    std::cout << buf;
    json j;
    j["dry_run"] = true;
    j["r1"] = iv(et.r1);
    j["r2"] = iv(et.r2);
    j["r3"] = iv(et.r3);
    j["r4"] = iv(et.r4);
    j["r_total"] = iv(total);
    return emit_ok("certify", j);
  }
  tx::ZeroTable t = load_table(tx::resolve_zeros_path(cfg.zeros_path, zeros_dir()));
  std::cerr << "zero sum over " << t.meta.count << " enclosures up to T=" << p.T << "\n";
  tx::BoundBreakdown bd = tx::lower_bound(p, t, cli_workers(cfg));
  std::optional<tx::CrossoverCertificate> cert =
      cfg.bound_eta0 > 0.0 ? tx::sharpen(p, bd, cfg.bound_eta0) : tx::sharpen(p, bd);
  if (!cert) {
    json j = breakdown_json(bd);
    j["cmd"] = "certify";
    j["status"] = "error";
    j["exit"] = 2;
    j["error"] = "no certificate: sharpened bound is not certainly positive";
    std::cout << j.dump() << "\n";
    std::cerr << "error: no certificate at omega=" << cfg.bound_omega << "\n";
    return 2;
  }
  std::cout << tx::format_certificate(p, bd, *cert);
  json j = breakdown_json(bd);
  j["omega"] = cert->omega;
  j["eta0"] = cert->eta0;
  j["integral_lb"] = iv(cert->integral_lb);
  j["x_window_exponents"] = json::array({cert->x_lo, cert->x_hi});
  j["pointwise_lb"] = iv(cert->pointwise_lb);
  j["successive_count_log10"] = cert->successive_count_log10;
  return emit_ok("certify", j);
}

std::uint64_t ledger_pi(const tx::GlobalLedger& led) {
  std::uint64_t n = 0;
  for (const auto& slot : led.results)
    if (slot) n += slot->prime_count;
  return n;
}

int report_verdict(const std::string& cmd, tx::GlobalLedger& led, const std::string& path,
                   json j) {
  j["ledger"] = path;
  j["bound"] = led.bound;
  j["segments"] = led.segment_count();
  j["damaged_requeued"] = led.damaged_records;
  if (led.verdict == tx::Verdict::crossover_found) {
    tx::Segment s = led.tile(led.first_failure);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "crossover candidate: segment %llu covering [%llu, %llu) fails theta(x) < x\n",
                  (unsigned long long)s.index, (unsigned long long)s.x_lo,
                  (unsigned long long)s.x_hi);
    std::cout << buf;
    j["verdict"] = "crossover_found";
    j["segment"] = led.first_failure;
    j["segment_x_lo"] = s.x_lo;
    j["segment_x_hi"] = s.x_hi;
    return emit_ok(cmd, j, 4);
  }
  if (led.verdict == tx::Verdict::incomplete)
    throw std::invalid_argument("ledger incomplete after run: " +
                                std::to_string(led.pending.size()) + " segments missing");
  std::uint64_t pi = ledger_pi(led);
  tx::Interval theta = led.cum_theta.back();
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "verified theta(x) < x for all x < %llu (%llu segments, pi = %llu, "
                "theta in [%.17g, %.17g])\n",
                (unsigned long long)led.bound, (unsigned long long)led.segment_count(),
                (unsigned long long)pi, theta.lo, theta.hi);
  std::cout << buf;
  j["verdict"] = "verified_below";
  j["pi"] = pi;
  j["theta"] = iv(theta);
  return emit_ok(cmd, j);
}

int cmd_sieve(tx::RunConfig& cfg, bool dry_run) {
  emit_config(cfg);
  tx::validate_sieve_params(cfg.sieve_bound, cfg.sieve_segment);
  if (dry_run) {
    std::uint64_t n = (cfg.sieve_bound + cfg.sieve_segment - 1) / cfg.sieve_segment;
    char buf[160];
    std::snprintf(buf, sizeof buf, "dry run: bound %llu in %llu segments of %llu\n",
                  (unsigned long long)cfg.sieve_bound, (unsigned long long)n,
                  (unsigned long long)cfg.sieve_segment);
    std::cout << buf;
    json j;
    j["dry_run"] = true;
    j["bound"] = cfg.sieve_bound;
    j["segment"] = cfg.sieve_segment;
    j["segments"] = n;
    return emit_ok("sieve", j);
  }
  std::cerr << "sieving to " << cfg.sieve_bound << " in segments of " << cfg.sieve_segment
            << "\n";
  tx::GlobalLedger led =
      tx::run_sieve(cfg.sieve_bound, cfg.sieve_segment, cfg.ledger_path, cli_workers(cfg));
  tx::finalize_ledger(cfg.ledger_path);
  tx::aggregate(led);
  return report_verdict("sieve", led, cfg.ledger_path, json::object());
}

int cmd_sieve_resume(tx::RunConfig& cfg, const std::string& path) {
  cfg.ledger_path = path;
  emit_config(cfg);
  tx::GlobalLedger before = tx::resume(path);
  std::cerr << "resuming " << path << ": " << before.pending.size() << " of "
            << before.segment_count() << " segments pending\n";
  tx::GlobalLedger led =
      tx::run_sieve(before.bound, before.seg_width, path, cli_workers(cfg));
  tx::finalize_ledger(path);
  tx::aggregate(led);
  json j;
  j["resumed"] = true;
  j["was_pending"] = before.pending.size();
  return report_verdict("sieve-resume", led, path, j);
}

int cmd_walk(tx::RunConfig& cfg, const std::string& path) {
  cfg.ledger_path = path;
  if (cfg.out_path.empty()) cfg.out_path = "walk.csv";
  emit_config(cfg);
  tx::GlobalLedger led = tx::resume(path);
  tx::aggregate(led);
  std::vector<tx::WalkRow> rows = tx::emit_walk(led);
  write_file(cfg.out_path, tx::walk_csv(rows));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu boundary rows to %s\n", rows.size(),
                cfg.out_path.c_str());
  std::cout << buf;
  json j;
  j["rows"] = rows.size();
  j["csv"] = cfg.out_path;
  j["x_last"] = rows.back().x;
  j["value_last"] = iv(rows.back().value);
  j["verdict"] = led.verdict == tx::Verdict::crossover_found ? "crossover_found"
                                                             : "verified_below";
  if (led.verdict == tx::Verdict::crossover_found) {
    j["segment"] = led.first_failure;
    return emit_ok("walk", j, 4);
  }
  return emit_ok("walk", j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified theta(x) - x toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key=value config file, flags win over it");
  FlagSet flags;
  flags.bind(&app, "--workers", "workers", "worker threads (0 = all cores)");

  CLI::App* zeros = app.add_subcommand("zeros", "zero table operations");
  zeros->require_subcommand(1);
  zeros->fallthrough();
  CLI::App* zc = zeros->add_subcommand("compute", "enclose ordinates from scratch");
  flags.bind(zc, "--t-max", "zeros.t_max", "enclose every zero with gamma <= t-max");
  flags.bind(zc, "--accuracy", "zeros.accuracy", "enclosure width target");
  flags.bind(zc, "--out", "out.path", "output table path");
  flags.bind(zc, "--format", "zeros.format", "output format: text or packed");

  CLI::App* zi = zeros->add_subcommand("import", "re-enclose an external ordinate list");
  std::string zi_in;
  zi->add_option("table", zi_in, "input table path")->required();
  double zi_half_width = 0.0;
  zi->add_option("--half-width", zi_half_width,
                 "extra half-width to add around every ordinate");
  flags.bind(zi, "--out", "out.path", "output table path");
  flags.bind(zi, "--format", "zeros.format", "output format: text or packed");

  CLI::App* zv = zeros->add_subcommand("validate", "check a table end to end");
  std::string zv_in;
  zv->add_option("table", zv_in, "table path")->required();

  CLI::App* sc = app.add_subcommand("scan", "zero sum S(omega) over an omega grid");
  std::string sc_omega;
  sc->add_option("--omega", sc_omega, "omega grid as lo:hi");
  flags.bind(sc, "--step", "scan.step", "omega grid step");
  flags.bind(sc, "--t", "bound.t", "zero-sum cutoff T");
  flags.bind(sc, "--alpha", "bound.alpha", "kernel concentration");
  flags.bind(sc, "--zeros", "zeros.path", "zero table path");
  flags.bind(sc, "--out", "out.path", "CSV output path");

  CLI::App* ce = app.add_subcommand("certify", "certify theta(x) > x near exp(omega)");
  bool ce_dry = false;
  ce->add_flag("--dry-run", ce_dry, "validate parameters and error terms only");
  flags.bind(ce, "--omega", "bound.omega", "window center exponent");
  flags.bind(ce, "--a", "bound.a", "height to which all zeros are known");
  flags.bind(ce, "--t", "bound.t", "zero-sum cutoff T");
  flags.bind(ce, "--alpha", "bound.alpha", "kernel concentration");
  flags.bind(ce, "--eta", "bound.eta", "window half-width");
  flags.bind(ce, "--eta0", "bound.eta0", "trimmed half-width (0 = smallest feasible)");
  flags.bind(ce, "--zeros", "zeros.path", "zero table path");

  CLI::App* sv = app.add_subcommand("sieve", "verify theta(x) < x below a bound");
  bool sv_dry = false;
  sv->add_flag("--dry-run", sv_dry, "validate bound and segmentation only");
  flags.bind(sv, "--bound", "sieve.bound", "verify for all x below this bound");
  flags.bind(sv, "--segment", "sieve.segment", "segment width");
  flags.bind(sv, "--ledger", "ledger.path", "ledger journal path");

  CLI::App* sr = app.add_subcommand("sieve-resume", "finish an interrupted sieve ledger");
  std::string sr_path;
  sr->add_option("ledger", sr_path, "ledger journal path")->required();

  CLI::App* wk = app.add_subcommand("walk", "emit (x - theta(x))/sqrt(x) at boundaries");
  std::string wk_path;
  wk->add_option("ledger", wk_path, "ledger journal path")->required();
  flags.bind(wk, "--out", "out.path", "CSV output path");

  for (CLI::App* s : {zc, zi, zv, sc, ce, sv, sr, wk}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return 0;
    json j;
    j["cmd"] = "(parse)";
    j["status"] = "error";
    j["exit"] = 2;
    j["error"] = e.what();
    std::cout << j.dump() << "\n";
    return 2;
  }

  auto with_config = [&](auto&& handler) {
    tx::RunConfig cfg;
    if (!config_path.empty()) cfg = tx::load_config(config_path);
    flags.apply(cfg);
    return handler(cfg);
  };

  if (zc->parsed())
    return guarded("zeros compute", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_zeros_compute(cfg); }); });
  if (zi->parsed())
    return guarded("zeros import", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_zeros_import(cfg, zi_in, zi_half_width); }); });
  if (zv->parsed())
    return guarded("zeros validate", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_zeros_validate(cfg, zv_in); }); });
  if (sc->parsed())
    return guarded("scan", [&] { return with_config([&](tx::RunConfig& cfg) {
      if (!sc_omega.empty()) {
        std::size_t colon = sc_omega.find(':');
        if (colon == std::string::npos) {
          tx::set_key(cfg, "scan.lo", sc_omega, "--omega");
          tx::set_key(cfg, "scan.hi", sc_omega, "--omega");
        } else {
          tx::set_key(cfg, "scan.lo", sc_omega.substr(0, colon), "--omega");
          tx::set_key(cfg, "scan.hi", sc_omega.substr(colon + 1), "--omega");
        }
      }
      return cmd_scan(cfg); }); });
  if (ce->parsed())
    return guarded("certify", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_certify(cfg, ce_dry); }); });
  if (sv->parsed())
    return guarded("sieve", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_sieve(cfg, sv_dry); }); });
  if (sr->parsed())
    return guarded("sieve-resume", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_sieve_resume(cfg, sr_path); }); });
  if (wk->parsed())
    return guarded("walk", [&] { return with_config([&](tx::RunConfig& cfg) {
      return cmd_walk(cfg, wk_path); }); });
  return 2;
}
