#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "stern/tasks.hpp"

namespace {

using namespace stern;

// "lo..hi[:step]" or "v", comma-separated pieces
std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (piece.empty()) throw ParameterError("empty range piece in '" + s + "'");
    size_t dots = piece.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stol(piece));
    } else {
      long lo = std::stol(piece.substr(0, dots));
      std::string rest = piece.substr(dots + 2);
      long step = 1;
      size_t colon = rest.find(':');
      if (colon != std::string::npos) {
        step = std::stol(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      long hi = std::stol(rest);
      if (step <= 0) throw ParameterError("range step must be positive in '" + piece + "'");
      for (long v = lo; v <= hi; v += step) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (piece.empty()) throw ParameterError("empty range piece in '" + s + "'");
    if (piece.find("..") != std::string::npos && piece.find('/') == std::string::npos) {
      for (long v : parse_longs(piece)) out.push_back(Rational(v));
    } else {
      out.push_back(parse_rational(piece));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct Config {
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "human";
  unsigned jobs = 1;

  std::filesystem::path resolved_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("STERNCHECK_CACHE_DIR"); env && *env) return env;
    return ".sterncache";
  }
  SequenceStore store() const { return SequenceStore(resolved_dir(), !no_cache); }
};

int emit(const Config& cfg, const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    std::cout << (cfg.format == "jsonl" ? to_jsonl(r) : to_human(r)) << "\n";
  for (const auto& r : reports)
    if (!r.pass) return 1;
  return 0;
}

int cmd_gen(const Config& cfg, const std::string& seq, const std::string& a_str, long upto,
            const std::string& mod) {
  if ((seq == "Ea") != !a_str.empty())
    throw ParameterError("--a is required for --seq Ea and invalid otherwise");
  SequenceId id = SequenceId::euler();
  if (seq == "Ea")
    id = SequenceId::gen_euler(parse_rational(a_str));
  else if (seq == "U")
    id = SequenceId::u();
  else if (seq == "S")
    id = SequenceId::s();
  auto store = cfg.store();
  if (mod.empty()) {
    auto t = store.get(id, Mode::EXACT, std::nullopt, (size_t)upto);
    for (long n = 0; n <= upto; ++n) std::cout << n << "\t" << rat_str(t->at_exact((size_t)n)) << "\n";
  } else {
    ModulusContext ctx = ModulusContext::parse(mod);
    auto t = store.get(id, Mode::MODULAR, ctx, (size_t)upto);
    for (long n = 0; n <= upto; ++n) std::cout << n << "\t" << t->at_mod((size_t)n).get_str() << "\n";
  }
  return 0;
}

int cmd_verify(const Config& cfg, const std::string& claim, const std::string& a_str,
               const std::string& b_str, const std::string& k_str, const std::string& m_str,
               const std::string& n_str, bool allow_b0) {
  const TaskDef* task = find_task(claim);
  if (!task) {
    std::cerr << "error: unknown claim '" << claim << "'\nknown claims:\n";
    for (const auto& t : task_registry())
      std::cerr << "  " << t.id << "  [" << t.dims << "]  " << t.summary << "\n";
    return 2;
  }
  ClaimGrid grid = task->defaults;
  if (!a_str.empty()) grid.a = parse_rationals(a_str);
  if (!b_str.empty()) grid.b = parse_longs(b_str);
  if (!k_str.empty()) grid.k = parse_longs(k_str);
  if (!m_str.empty()) grid.m = parse_longs(m_str);
  if (!n_str.empty()) grid.n = parse_longs(n_str);
  auto store = cfg.store();
  return emit(cfg, task->run(grid, store, cfg.jobs, allow_b0));
}

int cmd_pregular(const Config& cfg, const std::string& fam, long b, long nmax) {
  PAdicFunction f = make_family(family_from_str(fam), b);
  std::vector<VerificationReport> reports;
  for (const auto& lvl : check_pregular(f, (unsigned)nmax)) {
    VerificationReport r;
    r.claim = "pregular-" + family_str(f.fam);
    r.b = b;
    r.n = lvl.n;
    r.modulus = ModulusContext((unsigned long)f.p, (unsigned long)lvl.n).str();
    r.pass = lvl.pass;
    r.defect = lvl.defect;
    if (!lvl.defect) r.note = "alternating sum is exactly zero";
    reports.push_back(std::move(r));
  }
  return emit(cfg, reports);
}

int cmd_interp(const std::string& fam, long b, long n) {
  PAdicFunction f = make_family(family_from_str(fam), b);
  std::cout << interpolate(f, (unsigned)n).str() << "\n";
  return 0;
}

int cmd_cache(const Config& cfg, const std::string& action) {
  auto store = cfg.store();
  if (action == "path") {
    std::cout << store.dir().string() << "\n";
  } else if (action == "ls") {
    for (const auto& name : store.ls()) std::cout << name << "\n";
  } else {
    store.clear();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sterncheck: exact and modular verification of Euler-number congruences"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand too

  Config cfg;
  app.add_option("--cache-dir", cfg.cache_dir,
                 "cache directory (default: $STERNCHECK_CACHE_DIR or ./.sterncache)");
  app.add_flag("--no-cache", cfg.no_cache, "do not read or write the on-disk cache");
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"human", "jsonl"}))
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads for claim sweeps")->check(CLI::Range(1u, 64u));

  auto* gen = app.add_subcommand("gen", "print a sequence prefix, exact or modular");
  std::string g_seq, g_a, g_mod;
  long g_upto = 0;
  gen->add_option("--seq", g_seq, "sequence")->required()->check(CLI::IsMember({"E", "Ea", "U", "S"}));
  gen->add_option("--a", g_a, "parameter a as num[/den] (Ea only)");
  gen->add_option("--upto", g_upto, "largest index")->required()->check(CLI::Range(0L, 30000L));
  gen->add_option("--mod", g_mod, "prime-power modulus p^e");

  auto* poly = app.add_subcommand("poly", "print E_n^{(a)} as a polynomial in a");
  long p_n = 0;
  poly->add_option("--n", p_n, "index")->required()->check(CLI::Range(0L, 64L));

  auto* es = app.add_subcommand("es", "print e_s(a,b) as a polynomial in a");
  long e_s = 1;
  std::string e_par;
  es->add_option("--s", e_s, "order")->required()->check(CLI::Range(1L, 7L));
  es->add_option("--parity", e_par, "parity of b")->required()->check(CLI::IsMember({"even", "odd"}));

  auto* verify = app.add_subcommand("verify", "sweep a claim over a parameter grid");
  std::string v_claim, v_a, v_b, v_k, v_m, v_n;
  bool v_allow_b0 = false;
  verify->add_option("--claim", v_claim, "claim id (see `claims`)")->required();
  verify->add_option("--a", v_a, "a values, e.g. 1,3/2,-2 or 2..6:2");
  verify->add_option("--b", v_b, "b range lo..hi[:step] or list");
  verify->add_option("--k", v_k, "k range");
  verify->add_option("--m", v_m, "m range");
  verify->add_option("--n", v_n, "n range (identity claims)");
  verify->add_flag("--allow-b0", v_allow_b0, "probe b = 0 where the statement starts at b = 1");

  auto* pregular = app.add_subcommand("pregular", "p-regularity defect check for a family");
  std::string r_f;
  long r_b = 0, r_nmax = 10;
  pregular->add_option("--f", r_f, "family")->required()->check(CLI::IsMember({"U", "E", "S5", "S3"}));
  pregular->add_option("--b", r_b, "base index")->required()->check(CLI::Range(0L, 1000L));
  pregular->add_option("--nmax", r_nmax, "levels to check")->capture_default_str()->check(CLI::Range(1L, 24L));

  auto* interp = app.add_subcommand("interp", "interpolating polynomial for f(k) mod p^n");
  std::string i_f;
  long i_b = 0, i_n = 7;
  interp->add_option("--f", i_f, "family")->required()->check(CLI::IsMember({"U", "E", "S5", "S3"}));
  interp->add_option("--b", i_b, "base index")->required()->check(CLI::Range(0L, 1000L));
  interp->add_option("--n", i_n, "digits: coefficients mod p^n")->capture_default_str()->check(CLI::Range(1L, 12L));

  auto* cache = app.add_subcommand("cache", "inspect or clear the sequence cache");
  cache->require_subcommand(1);
  cache->add_subcommand("path", "print the resolved cache directory");
  cache->add_subcommand("ls", "list cached tables");
  cache->add_subcommand("clear", "delete cached tables");

  auto* claims = app.add_subcommand("claims", "list verifiable claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, g_seq, g_a, g_upto, g_mod);
    if (poly->parsed()) {
      std::cout << gen_euler_poly((size_t)p_n).str_ascending("a") << "\n";
      return 0;
    }
    if (es->parsed()) {
      std::cout << e_s_poly((unsigned)e_s, e_par == "odd" ? 1 : 0).str_ascending("a") << "\n";
      return 0;
    }
    if (verify->parsed())
      return cmd_verify(cfg, v_claim, v_a, v_b, v_k, v_m, v_n, v_allow_b0);
    if (pregular->parsed()) return cmd_pregular(cfg, r_f, r_b, r_nmax);
    if (interp->parsed()) return cmd_interp(i_f, i_b, i_n);
    if (cache->parsed())
      return cmd_cache(cfg, cache->get_subcommands().front()->get_name());
    if (claims->parsed()) {
      for (const auto& t : task_registry())
        std::cout << t.id << "  [" << t.dims << "]  " << t.summary << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
