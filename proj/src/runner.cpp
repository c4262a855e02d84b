#include "sievelab/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "sievelab/characters.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/exp_sums.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/summation.hpp"

namespace sievelab {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string format_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<i64>());
  if (v.is_number_unsigned()) return std::to_string(v.get<u64>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
  }
  return v.dump();
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

json table_json(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      const auto& v = row[i];
      // JSON has no inf/nan; mirror them as strings.
      if (v.is_number_float() && !std::isfinite(v.get<double>())) {
        obj[t.header[i]] = format_cell(v);
      } else {
        obj[t.header[i]] = v;
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

void emit(const Table& t, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    write_csv(t, out);
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + cfg.out_path + "'");
    write_csv(t, f);
  }
  if (!cfg.json_path.empty()) {
    std::ofstream f(cfg.json_path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + cfg.json_path + "'");
    f << table_json(t).dump(2) << '\n';
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::vector<i64> q_values(const RunConfig& cfg) {
  if (!cfg.qlist.empty()) {
    for (i64 q : cfg.qlist) require(q >= 2, "every Q must be >= 2");
    return cfg.qlist;
  }
  require(cfg.qmax >= 2, "--qmax must be >= 2");
  return {cfg.qmax};
}

i64 single_n(const RunConfig& cfg) {
  require(cfg.nlist.size() == 1, "--n takes exactly one value");
  require(cfg.nlist[0] >= 1, "--n must be >= 1");
  return cfg.nlist[0];
}

int run_verify_identity(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads) {
  require(cfg.qmax >= 2, "--qmax must be >= 2");
  const i64 N = single_n(cfg);
  const auto source = SequenceSource::parse(cfg.sequence);
  require(source.kind != SequenceKind::Random || cfg.seed.has_value(), "--seq random requires --seed");
  const auto seq = load_sequence(source, cfg.m, N, cfg.seed);

  const auto lhs = character_side_terms(cfg.qmax, seq, 1, threads);
  const auto rhs = congruence_side_terms(cfg.qmax, seq, threads);
  Table t{{"q", "character_side", "congruence_side", "rel_discrepancy", "pass"}, {}};
  bool ok = true;
  CompensatedSum lhs_total, rhs_total;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double rel = std::abs(lhs[i].value - rhs[i].value) / std::max(1.0, std::abs(lhs[i].value));
    const bool pass = rel <= cfg.tolerance;
    if (!pass) {
      ok = false;
      err << "identity failure: q=" << lhs[i].q << " character=" << lhs[i].value
          << " congruence=" << rhs[i].value << " rel=" << rel << '\n';
    }
    lhs_total += lhs[i].value;
    rhs_total += rhs[i].value;
    t.add({lhs[i].q, lhs[i].value, rhs[i].value, rel, pass});
  }
  const double rel = std::abs(lhs_total.value() - rhs_total.value()) / std::max(1.0, std::abs(lhs_total.value()));
  const bool pass = rel <= cfg.tolerance;
  if (!pass) {
    ok = false;
    err << "identity failure: total rel=" << rel << '\n';
  }
  t.add({"total", lhs_total.value(), rhs_total.value(), rel, pass});
  emit(t, cfg, out);
  return ok ? kOk : kVerificationFailed;
}

int run_extremal(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads) {
  require(cfg.qmax >= 2, "--qmax must be >= 2");
  const i64 N = single_n(cfg);
  const auto r = extremal_delta(cfg.qmax, N, cfg.m, {}, threads);
  const double envelope = trivial_envelope(cfg.qmax, N);
  const bool sandwich = r.lambda_max <= envelope * (1.0 + 1e-12);
  Table t{{"Q", "N", "M", "lambda_max", "iterations", "converged", "residual", "trivial_envelope", "pass"}, {}};
  t.add({cfg.qmax, N, cfg.m, r.lambda_max, r.iterations, r.converged, r.residual, envelope, sandwich && r.converged});
  emit(t, cfg, out);
  if (!r.converged) err << "power iteration hit the cap: Q=" << cfg.qmax << " N=" << N << " M=" << cfg.m << '\n';
  if (!sandwich) err << "sandwich failure: lambda=" << r.lambda_max << " > " << envelope << '\n';
  return sandwich && r.converged ? kOk : kVerificationFailed;
}

int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads) {
  const auto qs = q_values(cfg);
  require(!cfg.nlist.empty(), "--nlist is required");
  for (i64 n : cfg.nlist) require(n >= 1 && n <= GramKernel::kMaxSize, "every N must lie in [1, 4096]");

  struct Cell {
    i64 Q, N;
    SieveReport report;
  };
  std::vector<Cell> cells;
  for (i64 Q : qs) {
    for (i64 N : cfg.nlist) cells.push_back({Q, N, {}});
  }
  // Cells run concurrently; each cell is computed single-threaded, so the
  // numbers never depend on the worker count.
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    cells[i].report = bound_report(cells[i].Q, cells[i].N, cfg.m, 1);
  });

  Table t{{"Q", "N", "M", "lambda_max", "trivial_envelope", "theorem_envelope", "ratio_trivial", "ratio_theorem",
           "regime"},
          {}};
  bool ok = true;
  for (const auto& cell : cells) {
    const auto& r = cell.report;
    t.add({r.Q, r.N, r.M, r.lambda_max, r.trivial_envelope, r.theorem_envelope, r.ratio_trivial, r.ratio_theorem,
           to_string(r.regime)});
    if (!(r.lambda_max <= r.trivial_envelope * (1.0 + 1e-12)) || !std::isfinite(r.ratio_theorem)) {
      ok = false;
      err << "scan failure: Q=" << r.Q << " N=" << r.N << " lambda=" << r.lambda_max
          << " trivial_envelope=" << r.trivial_envelope << '\n';
    }
    if (!r.converged) {
      ok = false;
      err << "power iteration hit the cap: Q=" << r.Q << " N=" << r.N << '\n';
    }
  }
  emit(t, cfg, out);
  return ok ? kOk : kVerificationFailed;
}

int run_characters(const RunConfig& cfg, std::ostream& out) {
  require(cfg.p >= 2 && is_prime(static_cast<u64>(cfg.p)), "--p must be prime");
  require(cfg.p <= 100'000, "--p is limited to 100000");
  const auto members = enumerate_G_a(cfg.p, cfg.a);
  if (!cfg.dump) {
    Table t{{"p", "a", "members", "phi_p", "generator"}, {}};
    t.add({cfg.p, mod_floor(cfg.a, cfg.p), static_cast<i64>(members.size()), euler_phi(cfg.p),
           members.front().generator()});
    emit(t, cfg, out);
    return kOk;
  }
  Table t{{"character", "unit", "angle_num", "angle_den"}, {}};
  const i64 m = cfg.p * cfg.p;
  for (const auto& chi : members) {
    for (i64 u = 1; u < m; ++u) {
      if (u % cfg.p == 0) continue;
      const auto v = chi(u);
      t.add({chi.j(), u, v.angle.num(), v.angle.den()});
    }
  }
  emit(t, cfg, out);
  return kOk;
}

Table kloosterman_table() { return {{"c", "m", "n", "real", "imag", "bound", "pass"}, {}}; }

int run_kloosterman(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.c >= 1, "--c must be >= 1");
  require(cfg.c < kModulusCap, "--c must be below 2^40");
  const auto r = weil_check(cfg.km, cfg.kn, cfg.c);
  auto t = kloosterman_table();
  t.add({cfg.c, cfg.km, cfg.kn, r.value.real(), r.value.imag(), r.bound, r.passed});
  emit(t, cfg, out);
  if (!r.passed) err << "weil failure: (c,m,n)=(" << cfg.c << "," << cfg.km << "," << cfg.kn << ")\n";
  return r.passed ? kOk : kVerificationFailed;
}

int run_weil_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads) {
  std::vector<i64> cs = cfg.clist;
  if (cs.empty()) {
    require(cfg.cmax >= 1, "--cmax must be >= 1");
    require(cfg.cmax <= 2000, "--cmax is limited to 2000");
    for (i64 c = 1; c <= cfg.cmax; ++c) cs.push_back(c);
  }
  for (i64 c : cs) require(c >= 1 && c <= 2000, "grid moduli must lie in [1, 2000]");

  std::vector<std::vector<std::vector<json>>> blocks(cs.size());
  std::vector<std::vector<std::string>> failures(cs.size());
  parallel_for(cs.size(), threads, [&](std::size_t i) {
    const i64 c = cs[i];
    for (i64 m = 0; m < c; ++m) {
      for (i64 n = 0; n < c; ++n) {
        const auto r = weil_check(m, n, c);
        blocks[i].push_back({c, m, n, r.value.real(), r.value.imag(), r.bound, r.passed});
        if (!r.passed) {
          failures[i].push_back("weil failure: (c,m,n)=(" + std::to_string(c) + "," + std::to_string(m) + "," +
                                std::to_string(n) + ")");
        }
      }
    }
  });
  auto t = kloosterman_table();
  bool ok = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (auto& row : blocks[i]) t.add(std::move(row));
    for (const auto& f : failures[i]) {
      ok = false;
      err << f << '\n';
    }
  }
  emit(t, cfg, out);
  return ok ? kOk : kVerificationFailed;
}

int run_factor_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.trials >= 1, "--trials must be >= 1");
  require(cfg.seed.has_value(), "--seed is required");
  require(cfg.pmax >= 5, "--pmax must be >= 5");
  Table t{{"trial", "q", "q1", "q2", "l", "l1", "l2", "s0_real", "s0_imag", "product", "discrepancy", "bound",
           "pass"},
          {}};
  bool ok = true;
  for (i64 k = 0; k < cfg.trials; ++k) {
    const auto spec = random_distinct_spec(*cfg.seed, static_cast<u64>(k), cfg.pmax);
    const auto r = factorization_check(spec);
    const auto s0 = amplitude_sum(spec, 0).value;
    const auto product = s0 - r.value;
    t.add({k, spec.q, spec.q1, spec.q2, spec.l, spec.l1, spec.l2, s0.real(), s0.imag(), product.real(),
           std::abs(r.value), r.bound, r.passed});
    if (!r.passed) {
      ok = false;
      err << "factorization failure: trial " << k << " (q,q1,q2,l,l1,l2)=(" << spec.q << "," << spec.q1 << ","
          << spec.q2 << "," << spec.l << "," << spec.l1 << "," << spec.l2 << ")\n";
    }
  }
  emit(t, cfg, out);
  return ok ? kOk : kVerificationFailed;
}

int run_ramanujan_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const i64 qmax = cfg.qmax == 0 ? 100 : cfg.qmax;
  require(qmax >= 1 && qmax <= 100'000, "--qmax must lie in [1, 100000]");
  require(cfg.lmax >= 0, "--lmax must be >= 0");
  Table t{{"q", "l", "value", "closed_form", "gcd", "pass"}, {}};
  bool ok = true;
  for (i64 q = 1; q <= qmax; ++q) {
    for (i64 l = 0; l <= cfg.lmax; ++l) {
      const double v = ramanujan(l, q);
      const i64 closed = ramanujan_closed_form(l, q);
      const i64 g = gcd(l, q);
      const bool pass = std::abs(v) <= static_cast<double>(g) + 1e-9 &&
                        std::abs(v - static_cast<double>(closed)) <= 1e-10 * static_cast<double>(q);
      if (!pass) {
        ok = false;
        err << "ramanujan failure: (q,l)=(" << q << "," << l << ") value=" << v << '\n';
      }
      t.add({q, l, v, closed, g, pass});
    }
  }
  emit(t, cfg, out);
  return ok ? kOk : kVerificationFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "CSV output path (stdout when omitted)");
  sub->add_option("--json", cfg.json_path, "JSON mirror of the CSV output");
  sub->add_option("--threads", cfg.threads, "worker count");
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("SIEVELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Large-sieve experiments for special characters modulo prime squares", "sievelab"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify-identity", "both sides of the congruence identity, per prime");
  verify->add_option("--qmax", cfg.qmax)->required();
  verify->add_option("--n", cfg.nlist)->required()->expected(1);
  verify->add_option("--m", cfg.m);
  verify->add_option("--seq", cfg.sequence, "ones | random | mobius | file:PATH");
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--tol", cfg.tolerance, "relative tolerance");
  add_common(verify, cfg);

  auto* extremal = app.add_subcommand("extremal", "largest eigenvalue of the Gram kernel");
  extremal->add_option("--qmax", cfg.qmax)->required();
  extremal->add_option("--n", cfg.nlist)->required()->expected(1);
  extremal->add_option("--m", cfg.m);
  add_common(extremal, cfg);

  auto* scan = app.add_subcommand("scan", "extremal constants and envelopes over a (Q, N) grid");
  scan->add_option("--qmax", cfg.qmax);
  scan->add_option("--qlist", cfg.qlist)->delimiter(',');
  scan->add_option("--nlist", cfg.nlist)->required()->delimiter(',');
  scan->add_option("--m", cfg.m);
  add_common(scan, cfg);

  auto* chars = app.add_subcommand("characters", "members of G_a modulo p^2");
  chars->add_option("--p", cfg.p)->required();
  chars->add_option("--a", cfg.a);
  chars->add_flag("--dump", cfg.dump, "print the value tables");
  add_common(chars, cfg);

  auto* kloo = app.add_subcommand("kloosterman", "one Kloosterman sum against the Weil bound");
  kloo->add_option("--c", cfg.c)->required();
  kloo->add_option("--m", cfg.km)->required();
  kloo->add_option("--n", cfg.kn)->required();
  add_common(kloo, cfg);

  auto* weil = app.add_subcommand("weil-grid", "every (m, n) mod c for c <= cmax");
  weil->add_option("--cmax", cfg.cmax);
  weil->add_option("--clist", cfg.clist)->delimiter(',');
  add_common(weil, cfg);

  auto* factor = app.add_subcommand("factor-check", "triple Ramanujan factorization over random trials");
  factor->add_option("--trials", cfg.trials)->required();
  factor->add_option("--seed", cfg.seed)->required();
  factor->add_option("--pmax", cfg.pmax, "largest prime modulus");
  add_common(factor, cfg);

  auto* rama = app.add_subcommand("ramanujan-grid", "|c_q(l)| <= gcd(l, q) over a grid");
  rama->add_option("--qmax", cfg.qmax);
  rama->add_option("--lmax", cfg.lmax);
  add_common(rama, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsageError;
  }

  cfg.verb = app.get_subcommands().front()->get_name();
  const unsigned threads = resolve_threads(cfg.threads);
  try {
    if (cfg.verb == "verify-identity") return run_verify_identity(cfg, out, err, threads);
    if (cfg.verb == "extremal") return run_extremal(cfg, out, err, threads);
    if (cfg.verb == "scan") return run_scan(cfg, out, err, threads);
    if (cfg.verb == "characters") return run_characters(cfg, out);
    if (cfg.verb == "kloosterman") return run_kloosterman(cfg, out, err);
    if (cfg.verb == "weil-grid") return run_weil_grid(cfg, out, err, threads);
    if (cfg.verb == "factor-check") return run_factor_check(cfg, out, err);
    if (cfg.verb == "ramanujan-grid") return run_ramanujan_grid(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const FormatError& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const LengthMismatch& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const SizeCap& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const ModulusOverflow& e) {
    err << e.what() << '\n';
    return kUsageError;
  }
  err << "unknown verb " << cfg.verb << '\n';
  return kUsageError;
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_and_dispatch(args, out, err);
}

}  // namespace sievelab
