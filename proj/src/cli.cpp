#include "tkl/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tkl/congruence.hpp"
#include "tkl/errors.hpp"
#include "tkl/field.hpp"
#include "tkl/kloosterman.hpp"
#include "tkl/padic.hpp"
#include "tkl/parallel.hpp"
#include "tkl/rng.hpp"
#include "tkl/traces.hpp"

namespace tkl::cli {
namespace {

using json = nlohmann::ordered_json;

struct GlobalOpts {
  int n = 0;
  std::string modulus_text;
  int k = 3;
  std::uint64_t seed = kDefaultSeed;
  int parallel = 0;  // 0 = auto
  std::string format;
  std::string out;
};

std::vector<std::uint8_t> parse_modulus_text(const std::string& text, int n) {
  std::vector<std::uint8_t> c;
  if (text.find(',') == std::string::npos) {
    std::uint64_t packed = 0;
    std::size_t used = 0;
    packed = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad modulus literal: " + text);
    for (int i = 0; i < n; ++i) {
      c.push_back(static_cast<std::uint8_t>(packed % 3));
      packed /= 3;
    }
    if (packed) throw std::invalid_argument("packed modulus out of range for degree " + std::to_string(n));
    return c;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.size() != 1 || tok[0] < '0' || tok[0] > '2')
      throw std::invalid_argument("modulus coefficients must lie in {0,1,2}");
    c.push_back(static_cast<std::uint8_t>(tok[0] - '0'));
  }
  return c;
}

FieldContext build_field(const GlobalOpts& g) {
  std::optional<std::vector<std::uint8_t>> mod;
  if (!g.modulus_text.empty()) mod = parse_modulus_text(g.modulus_text, g.n);
  return FieldContext::build(g.n, std::move(mod));
}

// Atomic write: everything goes to a temp sibling first, renamed on success.
void write_output(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open output file " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string join_coeffs(const std::vector<std::uint8_t>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << static_cast<int>(c[i]);
  }
  return os.str();
}

// Moduli from the --mod flag, filtered by what the degree supports.
// Explicitly requesting an unsupported modulus is a usage error; "all"
// silently (well, with a stderr note) drops what does not apply.
std::vector<int> select_moduli(const std::string& sel, int n) {
  const std::vector<int> all = {2, 9, 18, 27, 54};
  auto applies = [n](int m) {
    if (m == 2) return n >= 1;
    if (m == 9 || m == 18) return n >= 2;
    return n >= 3;
  };
  if (sel == "all") {
    std::vector<int> out;
    for (int m : all) {
      if (applies(m))
        out.push_back(m);
      else
        std::cerr << "note: skipping mod " << m << " (not applicable at n=" << n << ")\n";
    }
    return out;
  }
  std::size_t used = 0;
  int m = 0;
  try {
    m = std::stoi(sel, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--mod must be one of 2, 9, 18, 27, 54, all");
  }
  if (used != sel.size() || std::find(all.begin(), all.end(), m) == all.end())
    throw std::invalid_argument("--mod must be one of 2, 9, 18, 27, 54, all");
  if (!applies(m))
    throw std::invalid_argument("mod-" + sel + " verification requires n >= " + (m >= 27 ? "3" : "2"));
  return {m};
}

json counterexample_json(const std::optional<Counterexample>& ce) {
  if (!ce) return nullptr;
  return json{{"index", ce->index},
              {"coeffs", ce->coeffs},
              {"predicted", ce->predicted},
              {"actual", ce->actual}};
}

json report_json(const VerifyReport& r) {
  return json{{"n", r.n},
              {"modulus", r.modulus},
              {"total", r.total},
              {"mismatches", r.mismatches},
              {"first_counterexample", counterexample_json(r.first_counterexample)},
              {"elapsed_ms", r.elapsed_ms}};
}

std::string report_text(const VerifyReport& r) {
  std::ostringstream os;
  os << "mod " << r.modulus << ": total=" << r.total << " mismatches=" << r.mismatches;
  if (r.first_counterexample) {
    const auto& ce = *r.first_counterexample;
    os << " first=(index=" << ce.index << " coeffs=" << ce.coeffs << " predicted=" << ce.predicted
       << " actual=" << ce.actual << ")";
  }
  os << " elapsed_ms=" << r.elapsed_ms;
  return os.str();
}

int cmd_field_info(const GlobalOpts& g) {
  const FieldContext ctx = build_field(g);
  const IndexSetFamily sets = build_index_sets(ctx.degree());
  json doc{{"n", ctx.degree()},
           {"q", ctx.order()},
           {"modulus", join_coeffs(ctx.modulus())},
           {"generator", {{"index", ctx.generator().idx}, {"coeffs", ctx.format(ctx.generator())}}},
           {"X", sets.x},
           {"Y", sets.y},
           {"Z", sets.z}};
  write_output(g.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_table(const GlobalOpts& g, const std::string& mod_sel) {
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format != "csv" && format != "json")
    throw std::invalid_argument("table --format must be csv or json");

  const FieldContext ctx = build_field(g);
  const TraceTables tables = TraceTables::build(ctx);
  const KloostermanTable table = kloosterman_all_fast(ctx);
  const std::vector<int> mods = select_moduli(mod_sel, ctx.degree());
  auto has = [&](int m) { return std::find(mods.begin(), mods.end(), m) != mods.end(); };

  auto canon = [](std::int64_t k, int m) { return ((k % m) + m) % m; };
  auto predict = [&](int m, Elem a) -> std::optional<std::int64_t> {
    switch (m) {
      case 2: return predict_mod2(ctx, a);
      case 9: return predict_mod9(tables.tr(a));
      case 18:
        if (a.idx == 0) return std::nullopt;
        return predict_mod18(ctx, tables, a);
      case 27: return predict_mod27(tables.profile(a));
      default: return predict_mod54(ctx, tables, a);
    }
  };

  if (format == "csv") {
    std::ostringstream os;
    os << "index,coeffs,Tr,tauX,tauY,tauZ,K";
    for (int m : {9, 18, 27, 54})
      if (has(m)) os << ",K_mod" << m;
    for (int m : mods) os << ",pred_mod" << m << ",match_mod" << m;
    os << "\n";
    for (std::uint32_t i = 0; i < ctx.order(); ++i) {
      const Elem a{i};
      const auto p = tables.profile(a);
      const std::int64_t k = table.values[i];
      os << i << ",\"" << ctx.format(a) << "\"," << int(p.tr) << "," << int(p.tau_x) << ","
         << int(p.tau_y) << "," << int(p.tau_z) << "," << k;
      for (int m : {9, 18, 27, 54})
        if (has(m)) os << "," << canon(k, m);
      for (int m : mods) {
        const auto pred = predict(m, a);
        if (!pred) {
          os << ",,";
          continue;
        }
        os << "," << *pred << "," << (canon(k, m) == *pred ? "true" : "false");
      }
      os << "\n";
    }
    write_output(g.out, os.str());
    return 0;
  }

  json rows = json::array();
  for (std::uint32_t i = 0; i < ctx.order(); ++i) {
    const Elem a{i};
    const auto p = tables.profile(a);
    const std::int64_t k = table.values[i];
    json row{{"index", i},     {"coeffs", ctx.format(a)}, {"Tr", p.tr},       {"tauX", p.tau_x},
             {"tauY", p.tau_y}, {"tauZ", p.tau_z},         {"K", k}};
    for (int m : {9, 18, 27, 54})
      if (has(m)) row["K_mod" + std::to_string(m)] = canon(k, m);
    for (int m : mods) {
      const auto pred = predict(m, a);
      row["pred_mod" + std::to_string(m)] = pred ? json(*pred) : json(nullptr);
      row["match_mod" + std::to_string(m)] = pred ? json(canon(k, m) == *pred) : json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  json doc{{"n", ctx.degree()},
           {"q", ctx.order()},
           {"modulus", join_coeffs(ctx.modulus())},
           {"generator", ctx.format(ctx.generator())},
           {"seed", g.seed},
           {"rows", std::move(rows)}};
  write_output(g.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& mod_sel) {
  const std::string format = g.format.empty() ? "text" : g.format;
  if (format != "text" && format != "json")
    throw std::invalid_argument("verify --format must be text or json");

  const FieldContext ctx = build_field(g);
  const TraceTables tables = TraceTables::build(ctx);
  const KloostermanTable table = kloosterman_all_fast(ctx);
  const std::vector<int> mods = select_moduli(mod_sel, ctx.degree());
  const int parallel = g.parallel;

  std::vector<VerifyReport> reports;
  for (int m : mods) reports.push_back(verify_sweep(ctx, tables, m, table, parallel));
  std::uint64_t mismatches = 0;
  for (const auto& r : reports) mismatches += r.mismatches;

  const bool all_mods = mod_sel == "all";
  const std::size_t coverage = tables.coverage().size();

  std::string content;
  if (format == "json") {
    if (reports.size() == 1 && !all_mods) {
      content = report_json(reports.front()).dump(2) + "\n";
    } else {
      json doc{{"command", "verify"},
               {"n", ctx.degree()},
               {"modulus", join_coeffs(ctx.modulus())},
               {"seed", g.seed},
               {"reports", json::array()}};
      for (const auto& r : reports) doc["reports"].push_back(report_json(r));
      doc["profile_coverage"] = json{{"attained", coverage}, {"possible", 27}};
      content = doc.dump(2) + "\n";
    }
  } else {
    std::ostringstream os;
    os << "# verify n=" << ctx.degree() << " modulus=" << join_coeffs(ctx.modulus())
       << " seed=" << g.seed << "\n";
    for (const auto& r : reports) os << report_text(r) << "\n";
    if (all_mods)
      os << "profile coverage: " << coverage << "/27 (Tr,tauX,tauY) triples attained\n";
    os << (mismatches ? "FAIL" : "PASS") << "\n";
    content = os.str();
  }
  write_output(g.out, content);
  return mismatches ? 1 : 0;
}

json check_json(const CheckReport& r) {
  return json{{"check", r.check},
              {"n", r.n},
              {"k", r.k},
              {"total", r.total},
              {"passed", r.total - r.failures},
              {"failed", r.failures},
              {"first_failing_j", r.first_failing_j ? json(*r.first_failing_j) : json(nullptr)},
              {"elapsed_ms", r.elapsed_ms}};
}

int cmd_gauss(const GlobalOpts& g, const std::string& check, int samples) {
  const std::string format = g.format.empty() ? "json" : g.format;
  if (format != "text" && format != "json")
    throw std::invalid_argument("gauss --format must be text or json");
  static const std::vector<std::string> known = {"valuation", "stickelberger", "gross-koblitz",
                                                 "wt1lem", "firstkl", "all"};
  if (std::find(known.begin(), known.end(), check) == known.end())
    throw std::invalid_argument(
        "--check must be one of valuation, stickelberger, gross-koblitz, wt1lem, firstkl, all");

  const FieldContext ctx = build_field(g);
  const int n = ctx.degree();

  std::map<int, PadicRing> rings;
  auto ring_at = [&](int k) -> const PadicRing& {
    auto it = rings.find(k);
    if (it == rings.end()) it = rings.emplace(k, PadicRing(ctx, k)).first;
    return it->second;
  };

  // Fourier check over all a (small fields) or a seeded sample.
  auto firstkl_report = [&](int check_k, int ring_k) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport r;
    r.check = "firstkl";
    r.n = n;
    r.k = check_k;
    const PadicRing& ring = ring_at(ring_k);
    const GaussSumSet sums(ring);
    auto run_one = [&](std::uint32_t idx) {
      const Elem a{idx};
      ++r.total;
      if (!fourier_congruence_check(ring, sums, a, check_k, kloosterman_naive(ctx, a))) {
        ++r.failures;
        if (!r.first_failing_j) r.first_failing_j = idx;
      }
    };
    if (n <= 3) {
      for (std::uint32_t idx = 0; idx < ctx.order(); ++idx) run_one(idx);
    } else {
      SampleRng rng(g.seed);
      for (int s = 0; s < samples; ++s)
        run_one(static_cast<std::uint32_t>(rng.next_below(ctx.order())));
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  std::vector<CheckReport> results;
  auto run_check = [&](const std::string& c, bool from_all) {
    if (c == "valuation") {
      results.push_back(valuation_check(ring_at(std::max(g.k, n + 1))));
    } else if (c == "stickelberger") {
      results.push_back(stickelberger_sweep(ring_at(std::max(g.k, n + 1))));
    } else if (c == "gross-koblitz") {
      results.push_back(gross_koblitz_sweep(ring_at(g.k)));
    } else if (c == "wt1lem") {
      results.push_back(wt1lem_check(ring_at(std::max(g.k, 3))));
    } else {  // firstkl
      int check_k = g.k;
      if (check_k > n) {
        if (!from_all)
          throw std::invalid_argument("firstkl holds mod 3^n only; pass --k <= " + std::to_string(n));
        check_k = n;
      }
      const int ring_k = n >= 3 ? std::max(check_k, 3) : check_k;
      results.push_back(firstkl_report(check_k, ring_k));
    }
  };
  if (check == "all") {
    for (const auto& c : {"valuation", "stickelberger", "gross-koblitz", "wt1lem", "firstkl"})
      run_check(c, true);
  } else {
    run_check(check, false);
  }

  std::uint64_t failures = 0;
  for (const auto& r : results) failures += r.failures;

  std::string content;
  if (format == "json") {
    json doc{{"command", "gauss"}, {"n", n}, {"seed", g.seed}, {"checks", json::array()}};
    for (const auto& r : results) doc["checks"].push_back(check_json(r));
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# gauss n=" << n << " seed=" << g.seed << "\n";
    for (const auto& r : results) {
      os << r.check << ": k=" << r.k << " total=" << r.total << " failures=" << r.failures;
      if (r.first_failing_j) os << " first_failing_j=" << *r.first_failing_j;
      os << " elapsed_ms=" << r.elapsed_ms << "\n";
    }
    os << (failures ? "FAIL" : "PASS") << "\n";
    content = os.str();
  }
  write_output(g.out, content);
  return failures ? 1 : 0;
}

int cmd_bench(const GlobalOpts& g, int naive_max_n) {
  const std::string format = g.format.empty() ? "text" : g.format;
  if (format != "text" && format != "json")
    throw std::invalid_argument("bench --format must be text or json");

  const FieldContext ctx = build_field(g);
  using clock = std::chrono::steady_clock;

  const auto t0 = clock::now();
  const KloostermanTable fast = kloosterman_all_fast(ctx);
  const double fast_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  bool ran_naive = ctx.degree() <= naive_max_n;
  double naive_ms = 0.0;
  bool equal = true;
  if (ran_naive) {
    const auto t1 = clock::now();
    const KloostermanTable naive = kloosterman_all_naive(ctx, g.parallel);
    naive_ms = std::chrono::duration<double, std::milli>(clock::now() - t1).count();
    equal = naive.values == fast.values;
  }

  std::string content;
  if (format == "json") {
    json doc{{"command", "bench"},
             {"n", ctx.degree()},
             {"seed", g.seed},
             {"butterflies", fast.butterflies},
             {"fast_ms", fast_ms},
             {"naive_ms", ran_naive ? json(naive_ms) : json(nullptr)},
             {"equal", ran_naive ? json(equal) : json(nullptr)}};
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# bench n=" << ctx.degree() << " seed=" << g.seed << "\n";
    os << "fast: elapsed_ms=" << fast_ms << " butterflies=" << fast.butterflies << "\n";
    if (ran_naive)
      os << "naive: elapsed_ms=" << naive_ms << " equal=" << (equal ? "true" : "false") << "\n";
    else
      os << "naive: skipped (n > " << naive_max_n << ")\n";
    os << (equal ? "PASS" : "FAIL") << "\n";
    content = os.str();
  }
  write_output(g.out, content);
  return equal ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const argv[]) {
  CLI::App app{"ternary Kloosterman sums over GF(3^n): tables, congruence sweeps, Gauss-sum checks"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--n", g.n, "field degree n (GF(3^n))")->check(CLI::Range(1, 10));
  app.add_option("--modulus", g.modulus_text,
                 "field modulus override, c0,c1,...,c_{n-1} or packed index");
  app.add_option("--k", g.k, "3-adic working precision (mod 3^k)")->check(CLI::Range(1, 18));
  app.add_option("--seed", g.seed, "PRNG seed for sampled checks");
  app.add_option("--parallel", g.parallel, "worker threads (0 = auto, TKL_PARALLEL honoured)");
  app.add_option("--format", g.format, "output format (csv/json/text, command-specific default)");
  app.add_option("--out", g.out, "output file (written atomically); default stdout");

  std::string mod_sel = "all";
  std::string check = "all";
  int samples = 50;
  int naive_max_n = 7;

  CLI::App* table = app.add_subcommand("table", "emit the full K(a) table with trace data");
  table->fallthrough();
  table->add_option("--mod", mod_sel, "residue columns: 2, 9, 18, 27, 54 or all");

  CLI::App* verify = app.add_subcommand("verify", "sweep the congruence classifiers against exact K(a)");
  verify->fallthrough();
  verify->add_option("--mod", mod_sel, "modulus to verify: 2, 9, 18, 27, 54 or all");

  CLI::App* gauss = app.add_subcommand("gauss", "verify Gauss-sum identities in the 3-adic ring");
  gauss->fallthrough();
  gauss->add_option("--check", check,
                    "valuation, stickelberger, gross-koblitz, wt1lem, firstkl or all");
  gauss->add_option("--samples", samples, "sample count for firstkl at n >= 4")
      ->check(CLI::PositiveNumber);

  CLI::App* bench = app.add_subcommand("bench", "time the fast transform against the naive sums");
  bench->fallthrough();
  bench->add_option("--naive-max-n", naive_max_n, "largest n for which the naive path runs");

  CLI::App* info = app.add_subcommand("field-info", "print field facts and the X/Y/Z exponent sets");
  info->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g.n == 0) throw std::invalid_argument("--n is required");
    if (table->parsed()) return cmd_table(g, mod_sel);
    if (verify->parsed()) return cmd_verify(g, mod_sel);
    if (gauss->parsed()) return cmd_gauss(g, check, samples);
    if (bench->parsed()) return cmd_bench(g, naive_max_n);
    if (info->parsed()) return cmd_field_info(g);
    throw std::invalid_argument("no subcommand given");
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("tkl");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace tkl::cli
