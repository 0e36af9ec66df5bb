#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "stern/poly.hpp"

namespace stern {

enum class SeqTag { EULER, GEN_EULER, U, S };
enum class Mode { EXACT, MODULAR, SYMBOLIC };

struct SequenceId {
  SeqTag tag = SeqTag::EULER;
  Rational a = 0;  // GEN_EULER only; nonzero there (0 allowed for symbolic tables where a stays formal)

  static SequenceId euler() { return {SeqTag::EULER, 0}; }
  static SequenceId gen_euler(const Rational& a);
  static SequenceId gen_euler_symbolic() { return {SeqTag::GEN_EULER, 0}; }
  static SequenceId u() { return {SeqTag::U, 0}; }
  static SequenceId s() { return {SeqTag::S, 0}; }

  std::string str() const;       // "E", "E^(3/2)", "U", "S"
  std::string file_key() const;  // "E", "Ea_3_2", "Ea_m3_2", "U", "S"
  bool operator==(const SequenceId& o) const { return tag == o.tag && a == o.a; }
};

// A computed prefix of one sequence in one mode. Exactly one of the three
// value vectors is populated, per mode.
struct SequenceTable {
  SequenceId id;
  Mode mode = Mode::EXACT;
  std::optional<ModulusContext> ctx;  // MODULAR only
  std::vector<Rational> exact;
  std::vector<Integer> residues;  // canonical
  std::vector<PolyZ> polys;

  size_t n_max() const;
  const Rational& at_exact(size_t n) const { return exact.at(n); }
  const Integer& at_mod(size_t n) const { return residues.at(n); }
  const PolyZ& at_poly(size_t n) const { return polys.at(n); }
};

// E_0 = 1, odd-index zero, even index from sum binom(2n,2r) E_2r = 0
SequenceTable euler_exact(size_t n_max);

// E_n^{(a)} from sum_{k} binom(n,2k) a^{2k} E_{n-2k}^{(a)} = (1-a)^n, solved
// top-down. MODULAR mode requires ctx and gcd(den(a), p) = 1; SYMBOLIC mode
// treats a as the formal symbol (the a argument is ignored).
SequenceTable gen_euler_recurrence(const Rational& a, size_t n_max, Mode mode = Mode::EXACT,
                                   const ModulusContext* ctx = nullptr);

// closed form E_n^{(a)} = sum_k binom(n,2k)(1-a)^{n-2k} a^{2k} E_{2k};
// independent of the recurrence route, used as a cross-check oracle
Rational gen_euler_direct(const Rational& a, size_t n);

// same closed form with a left symbolic
PolyZ gen_euler_poly(size_t n);

// U_0 = 1, U_n = -2 sum_{k>=1} binom(n,2k) U_{n-2k}
SequenceTable u_seq(size_t n_max, Mode mode = Mode::EXACT, const ModulusContext* ctx = nullptr);
// S_0 = 1, S_n = 1 - sum_{k<n} binom(n,k) 2^{2n-2k-1} S_k
SequenceTable s_seq(size_t n_max, Mode mode = Mode::EXACT, const ModulusContext* ctx = nullptr);

SequenceTable make_table(const SequenceId& id, size_t n_max, Mode mode,
                         const ModulusContext* ctx = nullptr);

struct CacheError : MathError {
  using MathError::MathError;
};
struct ContextMismatch : CacheError {
  using CacheError::CacheError;
};

// Text format: header "sterncache 1 <key> <mode> <p|-> <e|-> <n_max>" then one
// value per line (rationals "num/den", residues decimal, polynomials
// space-separated ascending coefficients).
void cache_store(const SequenceTable& t, const std::filesystem::path& file);
SequenceTable cache_load(const std::filesystem::path& file,
                         const std::optional<ModulusContext>& expect_ctx = std::nullopt);

// Content-addressed table cache: key = (sequence id, mode, p, e). Keeps the
// longest table per key, in memory and (when enabled) on disk under dir/.
// Disk access is serialized through a directory lock file.
class SequenceStore {
 public:
  explicit SequenceStore(std::filesystem::path dir, bool disk_enabled = true);

  std::shared_ptr<const SequenceTable> get(const SequenceId& id, Mode mode,
                                           const std::optional<ModulusContext>& ctx,
                                           size_t n_max);

  const std::filesystem::path& dir() const { return dir_; }
  bool disk_enabled() const { return disk_; }
  std::vector<std::string> ls() const;
  void clear();

 private:
  std::filesystem::path dir_;
  bool disk_ = true;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const SequenceTable>> mem_;
};

}  // namespace stern
