#include "stern/sequences.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace stern {

SequenceId SequenceId::gen_euler(const Rational& a) {
  if (a == 0) throw ParameterError("generalized Euler parameter a must be nonzero");
  return {SeqTag::GEN_EULER, a};
}

std::string SequenceId::str() const {
  switch (tag) {
    case SeqTag::EULER: return "E";
    case SeqTag::U: return "U";
    case SeqTag::S: return "S";
    case SeqTag::GEN_EULER: return a == 0 ? "E^(a)" : "E^(" + rat_str(a) + ")";
  }
  return "?";
}

std::string SequenceId::file_key() const {
  switch (tag) {
    case SeqTag::EULER: return "E";
    case SeqTag::U: return "U";
    case SeqTag::S: return "S";
    case SeqTag::GEN_EULER: {
      if (a == 0) return "Ea";  // symbolic
      std::string s = "Ea_";
      Integer num = a.get_num();
      if (num < 0) {
        s += "m";
        num = -num;
      }
      s += num.get_str() + "_" + a.get_den().get_str();
      return s;
    }
  }
  return "X";
}

namespace {

SequenceId id_from_key(const std::string& key) {
  if (key == "E") return SequenceId::euler();
  if (key == "U") return SequenceId::u();
  if (key == "S") return SequenceId::s();
  if (key == "Ea") return SequenceId::gen_euler_symbolic();
  if (key.rfind("Ea_", 0) == 0) {
    std::string rest = key.substr(3);
    bool neg = false;
    if (!rest.empty() && rest[0] == 'm') {
      neg = true;
      rest = rest.substr(1);
    }
    auto us = rest.find('_');
    if (us == std::string::npos) throw CacheError("bad sequence key '" + key + "'");
    Rational a(Integer(rest.substr(0, us)), Integer(rest.substr(us + 1)));
    a.canonicalize();
    if (neg) a = -a;
    return SequenceId::gen_euler(a);
  }
  throw CacheError("bad sequence key '" + key + "'");
}

}  // namespace

size_t SequenceTable::n_max() const {
  size_t sz = std::max({exact.size(), residues.size(), polys.size()});
  if (sz == 0) throw MathError("empty sequence table");
  return sz - 1;
}

// ---------------------------------------------------------------------------
// modular ring policies

namespace {

struct U64Ring {
  uint64_t m;
  using V = uint64_t;
  V zero() const { return 0; }
  V one() const { return 1 % m; }
  V add(V x, V y) const {
    V r = x + y;
    if (r >= m) r -= m;
    return r;
  }
  V sub(V x, V y) const { return x >= y ? x - y : x + (m - y); }
  V mul(V x, V y) const { return (V)((unsigned __int128)x * y % m); }
  V from_integer(const Integer& x) const {
    Integer r = mod_reduce(x, Integer((unsigned long)m));
    return (V)mpz_get_ui(r.get_mpz_t());
  }
  Integer to_integer(V x) const { return Integer((unsigned long)x); }
};

struct MpzRing {
  Integer m;
  using V = Integer;
  V zero() const { return 0; }
  V one() const { return mod_reduce(1, m); }
  V add(const V& x, const V& y) const {
    V r = x + y;
    if (r >= m) r -= m;
    return r;
  }
  V sub(const V& x, const V& y) const { return x >= y ? V(x - y) : V(x + m - y); }
  V mul(const V& x, const V& y) const { return mod_reduce(x * y, m); }
  V from_integer(const Integer& x) const { return mod_reduce(x, m); }
  Integer to_integer(const V& x) const { return x; }
};

bool fits_u64(const Integer& m) { return mpz_sizeinbase(m.get_mpz_t(), 2) <= 62; }

// rolling Pascal row extension: row holds binom(n, 0..n) mod m
template <class R>
void extend_row(const R& rg, std::vector<typename R::V>& row, size_t n) {
  row[n] = rg.zero();
  for (size_t j = n; j >= 1; --j) row[j] = rg.add(row[j], row[j - 1]);
}

template <class R>
std::vector<Integer> gen_euler_kernel_mod(const R& rg, const typename R::V& a, size_t n_max) {
  using V = typename R::V;
  std::vector<V> E(n_max + 1), row(n_max + 1, rg.zero()), a2pow(n_max / 2 + 1);
  V a2 = rg.mul(a, a);
  a2pow[0] = rg.one();
  for (size_t i = 1; i <= n_max / 2; ++i) a2pow[i] = rg.mul(a2pow[i - 1], a2);
  V oma = rg.sub(rg.one(), a);
  V oman = rg.one();
  E[0] = rg.one();
  row[0] = rg.one();
  for (size_t n = 1; n <= n_max; ++n) {
    extend_row(rg, row, n);
    oman = rg.mul(oman, oma);
    V v = oman;
    for (size_t k = 1; 2 * k <= n; ++k)
      v = rg.sub(v, rg.mul(rg.mul(row[2 * k], a2pow[k]), E[n - 2 * k]));
    E[n] = v;
  }
  std::vector<Integer> out(n_max + 1);
  for (size_t i = 0; i <= n_max; ++i) out[i] = rg.to_integer(E[i]);
  return out;
}

template <class R>
std::vector<Integer> u_kernel_mod(const R& rg, size_t n_max) {
  using V = typename R::V;
  std::vector<V> U(n_max + 1), row(n_max + 1, rg.zero());
  V two = rg.add(rg.one(), rg.one());
  U[0] = rg.one();
  row[0] = rg.one();
  for (size_t n = 1; n <= n_max; ++n) {
    extend_row(rg, row, n);
    V s = rg.zero();
    for (size_t k = 1; 2 * k <= n; ++k) s = rg.add(s, rg.mul(row[2 * k], U[n - 2 * k]));
    U[n] = rg.sub(rg.zero(), rg.mul(two, s));
  }
  std::vector<Integer> out(n_max + 1);
  for (size_t i = 0; i <= n_max; ++i) out[i] = rg.to_integer(U[i]);
  return out;
}

template <class R>
std::vector<Integer> s_kernel_mod(const R& rg, size_t n_max) {
  using V = typename R::V;
  std::vector<V> S(n_max + 1), row(n_max + 1, rg.zero()), p2(2 * n_max + 1);
  V two = rg.add(rg.one(), rg.one());
  p2[0] = rg.one();
  for (size_t i = 1; i <= 2 * n_max; ++i) p2[i] = rg.mul(p2[i - 1], two);
  S[0] = rg.one();
  row[0] = rg.one();
  for (size_t n = 1; n <= n_max; ++n) {
    extend_row(rg, row, n);
    V t = rg.zero();
    for (size_t k = 0; k < n; ++k)
      t = rg.add(t, rg.mul(rg.mul(row[k], p2[2 * n - 2 * k - 1]), S[k]));
    S[n] = rg.sub(rg.one(), t);
  }
  std::vector<Integer> out(n_max + 1);
  for (size_t i = 0; i <= n_max; ++i) out[i] = rg.to_integer(S[i]);
  return out;
}

std::vector<Integer> run_mod_kernel(const SequenceId& id, size_t n_max, const ModulusContext& ctx) {
  const bool small = fits_u64(ctx.modulus);
  switch (id.tag) {
    case SeqTag::EULER:
    case SeqTag::GEN_EULER: {
      Rational a = id.tag == SeqTag::EULER ? Rational(1) : id.a;
      Integer ares = rational_residue(a, ctx);  // throws NotPAdicInteger when p | den
      if (small) {
        U64Ring rg{ctx.modulus.get_ui()};
        return gen_euler_kernel_mod(rg, rg.from_integer(ares), n_max);
      }
      MpzRing rg{ctx.modulus};
      return gen_euler_kernel_mod(rg, ares, n_max);
    }
    case SeqTag::U:
      if (small) return u_kernel_mod(U64Ring{ctx.modulus.get_ui()}, n_max);
      return u_kernel_mod(MpzRing{ctx.modulus}, n_max);
    case SeqTag::S:
      if (small) return s_kernel_mod(U64Ring{ctx.modulus.get_ui()}, n_max);
      return s_kernel_mod(MpzRing{ctx.modulus}, n_max);
  }
  throw MathError("unreachable");
}

}  // namespace

// ---------------------------------------------------------------------------
// exact & symbolic generators

SequenceTable euler_exact(size_t n_max) {
  SequenceTable t;
  t.id = SequenceId::euler();
  t.mode = Mode::EXACT;
  t.exact.assign(n_max + 1, Rational(0));
  t.exact[0] = 1;
  for (size_t n = 2; n <= n_max; n += 2) {
    Integer s = 0;
    for (size_t r = 0; r < n; r += 2) s += binomial(n, (long)r) * t.exact[r].get_num();
    t.exact[n] = Rational(-s);
  }
  return t;
}

SequenceTable gen_euler_recurrence(const Rational& a, size_t n_max, Mode mode,
                                   const ModulusContext* ctx) {
  SequenceTable t;
  t.mode = mode;
  if (mode == Mode::SYMBOLIC) {
    t.id = SequenceId::gen_euler_symbolic();
    t.polys.resize(n_max + 1);
    t.polys[0] = PolyZ::constant(1);
    for (size_t n = 1; n <= n_max; ++n) {
      PolyZ v = PolyZ::power_of_binomial_1_minus_x(n);
      for (size_t k = 1; 2 * k <= n; ++k)
        v = v - t.polys[n - 2 * k].shifted(2 * k).scaled(binomial(n, (long)(2 * k)));
      t.polys[n] = std::move(v);
    }
    return t;
  }
  t.id = SequenceId::gen_euler(a);
  if (mode == Mode::MODULAR) {
    if (!ctx) throw ParameterError("modular mode requires a modulus context");
    t.ctx = *ctx;
    t.residues = run_mod_kernel(t.id, n_max, *ctx);
    return t;
  }
  t.exact.assign(n_max + 1, Rational(0));
  t.exact[0] = 1;
  Rational oma = Rational(1) - a;
  Rational a2 = a * a;
  Rational oman = 1;
  std::vector<Rational> a2pow(n_max / 2 + 1);
  a2pow[0] = 1;
  for (size_t i = 1; i <= n_max / 2; ++i) a2pow[i] = a2pow[i - 1] * a2;
  for (size_t n = 1; n <= n_max; ++n) {
    oman *= oma;
    Rational v = oman;
    for (size_t k = 1; 2 * k <= n; ++k)
      v -= Rational(binomial(n, (long)(2 * k))) * a2pow[k] * t.exact[n - 2 * k];
    t.exact[n] = v;
  }
  return t;
}

Rational gen_euler_direct(const Rational& a, size_t n) {
  if (a == 0) throw ParameterError("generalized Euler parameter a must be nonzero");
  static std::mutex mu;
  static std::vector<Rational> euler_cache;  // E_0.. grown on demand
  {
    std::lock_guard<std::mutex> lk(mu);
    if (euler_cache.size() <= n) euler_cache = euler_exact(n + 8).exact;
  }
  Rational oma = Rational(1) - a;
  Rational v = 0;
  Rational omapow = 1;  // (1-a)^{n-2k}, built descending via division is messy; go ascending
  // accumulate k = floor(n/2) .. 0 so (1-a)^{n-2k} grows by oma^2 steps
  Rational oma2 = oma * oma;
  Rational a2 = a * a;
  // start at k = floor(n/2): exponent n-2k = n mod 2
  size_t kmax = n / 2;
  Rational omaterm = (n % 2) ? oma : Rational(1);
  Rational apow = 1;
  for (size_t i = 0; i < kmax; ++i) apow *= a2;  // a^{2*kmax}
  std::lock_guard<std::mutex> lk(mu);
  for (size_t k = kmax + 1; k-- > 0;) {
    v += Rational(binomial(n, (long)(2 * k))) * omaterm * apow * euler_cache[2 * k];
    if (k > 0) {
      omaterm *= oma2;
      apow /= a2;
    }
  }
  return v;
}

PolyZ gen_euler_poly(size_t n) {
  static std::mutex mu;
  static std::vector<Rational> euler_cache;
  std::lock_guard<std::mutex> lk(mu);
  if (euler_cache.size() <= n) euler_cache = euler_exact(n + 8).exact;
  PolyZ out;
  for (size_t k = 0; 2 * k <= n; ++k) {
    Integer coef = binomial(n, (long)(2 * k)) * euler_cache[2 * k].get_num();
    out = out + PolyZ::power_of_binomial_1_minus_x(n - 2 * k).scaled(coef).shifted(2 * k);
  }
  return out;
}

SequenceTable u_seq(size_t n_max, Mode mode, const ModulusContext* ctx) {
  SequenceTable t;
  t.id = SequenceId::u();
  t.mode = mode;
  if (mode == Mode::SYMBOLIC) throw ParameterError("U has no symbolic mode");
  if (mode == Mode::MODULAR) {
    if (!ctx) throw ParameterError("modular mode requires a modulus context");
    t.ctx = *ctx;
    t.residues = run_mod_kernel(t.id, n_max, *ctx);
    return t;
  }
  t.exact.assign(n_max + 1, Rational(0));
  t.exact[0] = 1;
  for (size_t n = 1; n <= n_max; ++n) {
    Integer s = 0;
    for (size_t k = 1; 2 * k <= n; ++k)
      s += binomial(n, (long)(2 * k)) * t.exact[n - 2 * k].get_num();
    t.exact[n] = Rational(Integer(-2 * s));
  }
  return t;
}

SequenceTable s_seq(size_t n_max, Mode mode, const ModulusContext* ctx) {
  SequenceTable t;
  t.id = SequenceId::s();
  t.mode = mode;
  if (mode == Mode::SYMBOLIC) throw ParameterError("S has no symbolic mode");
  if (mode == Mode::MODULAR) {
    if (!ctx) throw ParameterError("modular mode requires a modulus context");
    t.ctx = *ctx;
    t.residues = run_mod_kernel(t.id, n_max, *ctx);
    return t;
  }
  t.exact.assign(n_max + 1, Rational(0));
  t.exact[0] = 1;
  for (size_t n = 1; n <= n_max; ++n) {
    Integer s = 0;
    for (size_t k = 0; k < n; ++k)
      s += binomial(n, (long)k) * pow_ui(2, 2 * n - 2 * k - 1) * t.exact[k].get_num();
    t.exact[n] = Rational(Integer(1 - s));
  }
  return t;
}

SequenceTable make_table(const SequenceId& id, size_t n_max, Mode mode,
                         const ModulusContext* ctx) {
  switch (id.tag) {
    case SeqTag::EULER:
      if (mode == Mode::EXACT) return euler_exact(n_max);
      if (mode == Mode::MODULAR) {
        SequenceTable t;
        t.id = id;
        t.mode = mode;
        if (!ctx) throw ParameterError("modular mode requires a modulus context");
        t.ctx = *ctx;
        t.residues = run_mod_kernel(id, n_max, *ctx);
        return t;
      }
      throw ParameterError("E has no symbolic table mode; use the E^(a) polynomials");
    case SeqTag::GEN_EULER:
      return gen_euler_recurrence(id.a, n_max, mode, ctx);
    case SeqTag::U:
      return u_seq(n_max, mode, ctx);
    case SeqTag::S:
      return s_seq(n_max, mode, ctx);
  }
  throw MathError("unreachable");
}

// ---------------------------------------------------------------------------
// cache files

namespace {

const char* mode_str(Mode m) {
  switch (m) {
    case Mode::EXACT: return "exact";
    case Mode::MODULAR: return "modular";
    case Mode::SYMBOLIC: return "symbolic";
  }
  return "?";
}

Mode mode_from_str(const std::string& s) {
  if (s == "exact") return Mode::EXACT;
  if (s == "modular") return Mode::MODULAR;
  if (s == "symbolic") return Mode::SYMBOLIC;
  throw CacheError("bad mode '" + s + "'");
}

}  // namespace

void cache_store(const SequenceTable& t, const std::filesystem::path& file) {
  std::ostringstream os;
  os << "sterncache 1 " << t.id.file_key() << " " << mode_str(t.mode) << " "
     << (t.ctx ? std::to_string(t.ctx->p) : "-") << " "
     << (t.ctx ? std::to_string(t.ctx->e) : "-") << " " << t.n_max() << "\n";
  size_t nm = t.n_max();
  for (size_t i = 0; i <= nm; ++i) {
    switch (t.mode) {
      case Mode::EXACT: os << rat_str(t.exact[i]) << "\n"; break;
      case Mode::MODULAR: os << t.residues[i].get_str() << "\n"; break;
      case Mode::SYMBOLIC: {
        const auto& c = t.polys[i].c;
        if (c.empty()) {
          os << "0";
        } else {
          for (size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j].get_str();
        }
        os << "\n";
        break;
      }
    }
  }
  std::filesystem::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw CacheError("cannot write " + tmp.string());
    f << os.str();
    if (!f.good()) throw CacheError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

SequenceTable cache_load(const std::filesystem::path& file,
                         const std::optional<ModulusContext>& expect_ctx) {
  std::ifstream f(file);
  if (!f) throw CacheError("cannot open " + file.string());
  std::string magic, key, modes, ps, es;
  size_t n_max = 0;
  int version = 0;
  if (!(f >> magic >> version >> key >> modes >> ps >> es >> n_max) || magic != "sterncache" ||
      version != 1)
    throw CacheError("corrupt cache header in " + file.string());
  SequenceTable t;
  t.id = id_from_key(key);
  t.mode = mode_from_str(modes);
  if (t.mode == Mode::MODULAR) {
    if (ps == "-" || es == "-") throw CacheError("corrupt cache header in " + file.string());
    try {
      t.ctx = ModulusContext((unsigned)std::stoul(ps), (unsigned)std::stoul(es));
    } catch (const std::logic_error&) {
      throw CacheError("corrupt cache header in " + file.string());
    }
  }
  if (expect_ctx) {
    if (!t.ctx || *t.ctx != *expect_ctx)
      throw ContextMismatch("cache file " + file.string() + " holds " +
                            (t.ctx ? t.ctx->str() : std::string("non-modular")) +
                            " but context " + expect_ctx->str() + " was requested");
  }
  std::string line;
  std::getline(f, line);  // consume header tail
  for (size_t i = 0; i <= n_max; ++i) {
    if (!std::getline(f, line) || line.empty())
      throw CacheError("truncated cache file " + file.string());
    try {
      switch (t.mode) {
        case Mode::EXACT: t.exact.push_back(parse_rational(line)); break;
        case Mode::MODULAR: {
          Integer v(line);
          if (v < 0 || v >= t.ctx->modulus)
            throw CacheError("non-canonical residue in " + file.string());
          t.residues.push_back(std::move(v));
          break;
        }
        case Mode::SYMBOLIC: {
          std::istringstream ls(line);
          std::vector<Integer> cs;
          std::string tok;
          while (ls >> tok) cs.emplace_back(tok);
          t.polys.emplace_back(std::move(cs));
          break;
        }
      }
    } catch (const std::invalid_argument&) {
      throw CacheError("corrupt value in " + file.string());
    } catch (const ParameterError&) {
      throw CacheError("corrupt value in " + file.string());
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// store

namespace {

class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) {
    fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

std::string store_key(const SequenceId& id, Mode mode, const std::optional<ModulusContext>& ctx) {
  std::string k = id.file_key();
  switch (mode) {
    case Mode::EXACT: k += "_exact"; break;
    case Mode::SYMBOLIC: k += "_sym"; break;
    case Mode::MODULAR:
      if (!ctx) throw ParameterError("modular mode requires a modulus context");
      k += "_mod_" + std::to_string(ctx->p) + "_" + std::to_string(ctx->e);
      break;
  }
  return k;
}

}  // namespace

SequenceStore::SequenceStore(std::filesystem::path dir, bool disk_enabled)
    : dir_(std::move(dir)), disk_(disk_enabled) {
  if (disk_) std::filesystem::create_directories(dir_);
}

std::shared_ptr<const SequenceTable> SequenceStore::get(const SequenceId& id, Mode mode,
                                                        const std::optional<ModulusContext>& ctx,
                                                        size_t n_max) {
  const std::string key = store_key(id, mode, ctx);
  std::lock_guard<std::mutex> lk(mu_);
  auto it = mem_.find(key);
  if (it != mem_.end() && it->second->n_max() >= n_max) return it->second;

  const std::filesystem::path file = dir_ / (key + ".tbl");
  size_t disk_len_plus1 = 0;  // 0 = no usable disk table
  if (disk_) {
    DirLock lock(dir_);
    if (std::filesystem::exists(file)) {
      auto loaded = cache_load(file, ctx);
      if (!(loaded.id == id) || loaded.mode != mode)
        throw CacheError("cache file " + file.string() + " does not match its key");
      disk_len_plus1 = loaded.n_max() + 1;
      if (loaded.n_max() >= n_max) {
        auto sp = std::make_shared<const SequenceTable>(std::move(loaded));
        mem_[key] = sp;
        return sp;
      }
    }
  }

  auto sp = std::make_shared<const SequenceTable>(make_table(id, n_max, mode, ctx ? &*ctx : nullptr));
  if (disk_ && disk_len_plus1 < n_max + 1) {
    DirLock lock(dir_);
    cache_store(*sp, file);
  }
  mem_[key] = sp;
  return sp;
}

std::vector<std::string> SequenceStore::ls() const {
  std::vector<std::string> out;
  if (!std::filesystem::exists(dir_)) return out;
  for (const auto& de : std::filesystem::directory_iterator(dir_))
    if (de.path().extension() == ".tbl") out.push_back(de.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

void SequenceStore::clear() {
  std::lock_guard<std::mutex> lk(mu_);
  mem_.clear();
  if (!std::filesystem::exists(dir_)) return;
  DirLock lock(dir_);
  for (const auto& de : std::filesystem::directory_iterator(dir_))
    if (de.path().extension() == ".tbl") std::filesystem::remove(de.path());
}

}  // namespace stern
