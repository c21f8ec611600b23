#include "eip/oracle.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eip/error.hpp"
#include "eip/io.hpp"

namespace eip {

namespace {

void check_guardrail(int dimension, int n, const OracleOptions& opts) {
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("oracle: dimension must be 2 or 3");
  if (n < 1) throw std::invalid_argument("oracle: n must be >= 1");
  const int cap = dimension == 2 ? kOracleMaxN2 : kOracleMaxN3;
  if (n > cap && !opts.allow_large) {
    throw std::invalid_argument("oracle: n = " + std::to_string(n) + " exceeds the guardrail " + std::to_string(cap) +
                                " for dimension " + std::to_string(dimension));
  }
}

// Dense lattice window holding every cell reachable from the root, plus a
// one-cell margin so neighbour lookups never leave the array.
template <std::size_t D>
class Lattice {
 public:
  explicit Lattice(int n) {
    const i64 r = n - 1;
    box_.lo[0] = -1;
    box_.hi[0] = r + 1;
    for (std::size_t i = 1; i < D; ++i) {
      box_.lo[i] = -r - 1;
      box_.hi[i] = r + 1;
    }
    std::size_t total = 1;
    for (std::size_t i = D; i-- > 0;) {
      stride_[i] = total;
      total *= static_cast<std::size_t>(box_.count(i));
    }
    allowed_.assign(total, 0);
    coords_.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Point<D> p;
      std::size_t rem = idx;
      for (std::size_t i = 0; i < D; ++i) {
        p[i] = box_.lo[i] + static_cast<i64>(rem / stride_[i]);
        rem %= stride_[i];
      }
      coords_[idx] = p;
      bool interior = true;
      for (std::size_t i = 0; i < D; ++i) interior = interior && p[i] > box_.lo[i] && p[i] < box_.hi[i];
      allowed_[idx] = interior && p >= Point<D>{} ? 1 : 0;
    }
    for (std::size_t i = 0; i < D; ++i) {
      offsets_[2 * i] = static_cast<int>(stride_[i]);
      offsets_[2 * i + 1] = -static_cast<int>(stride_[i]);
    }
  }

  int root() const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < D; ++i) idx += static_cast<std::size_t>(-box_.lo[i]) * stride_[i];
    return static_cast<int>(idx);
  }

  std::size_t size() const { return allowed_.size(); }
  bool allowed(int idx) const { return allowed_[static_cast<std::size_t>(idx)] != 0; }
  const std::array<int, 2 * D>& offsets() const { return offsets_; }
  std::span<const Point<D>> coords() const { return coords_; }

 private:
  Box<D> box_;
  std::array<std::size_t, D> stride_{};
  std::array<int, 2 * D> offsets_{};
  std::vector<std::uint8_t> allowed_;
  std::vector<Point<D>> coords_;
};

template <std::size_t D>
class Redelmeier {
 public:
  Redelmeier(int n, const PolyformVisitor<D>& visit)
      : n_(n), lat_(n), visit_(visit), occupied_(lat_.size(), 0), reached_(lat_.size(), 0) {
    cells_.reserve(static_cast<std::size_t>(n));
  }

  u64 run() {
    const int root = lat_.root();
    reached_[static_cast<std::size_t>(root)] = 1;
    grow({root}, 0);
    return count_;
  }

 private:
  void grow(std::vector<int> untried, i64 bonds) {
    while (!untried.empty()) {
      const int c = untried.back();
      untried.pop_back();
      int nb = 0;
      for (int off : lat_.offsets()) nb += occupied_[static_cast<std::size_t>(c + off)];
      occupied_[static_cast<std::size_t>(c)] = 1;
      cells_.push_back(c);
      if (static_cast<int>(cells_.size()) == n_) {
        ++count_;
        if (visit_) visit_(Polyform<D>(cells_, bonds + nb, lat_.coords()));
      } else {
        std::vector<int> next = untried;
        const std::size_t first_new = next.size();
        for (int off : lat_.offsets()) {
          const int m = c + off;
          if (lat_.allowed(m) && !reached_[static_cast<std::size_t>(m)]) {
            reached_[static_cast<std::size_t>(m)] = 1;
            next.push_back(m);
          }
        }
        const std::vector<int> added(next.begin() + static_cast<std::ptrdiff_t>(first_new), next.end());
        grow(std::move(next), bonds + nb);
        for (int m : added) reached_[static_cast<std::size_t>(m)] = 0;
      }
      cells_.pop_back();
      occupied_[static_cast<std::size_t>(c)] = 0;
    }
  }

  int n_;
  Lattice<D> lat_;
  const PolyformVisitor<D>& visit_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::uint8_t> reached_;
  std::vector<int> cells_;
  u64 count_ = 0;
};

template <std::size_t D>
OracleRecord theta_impl(int n, const OracleOptions& opts) {
  OracleRecord rec;
  rec.dimension = static_cast<int>(D);
  rec.n = n;
  rec.max_bonds = -1;
  std::vector<Config<D>> samples;
  const PolyformVisitor<D> visit = [&](const Polyform<D>& p) {
    if (p.bonds() > rec.max_bonds) {
      rec.max_bonds = p.bonds();
      rec.minimizer_count = 0;
      samples.clear();
    }
    if (p.bonds() == rec.max_bonds) {
      ++rec.minimizer_count;
      if (samples.size() < opts.sample_cap) samples.push_back(p.to_config());
    }
  };
  rec.count = enumerate_connected<D>(n, visit, opts);
  rec.min_perimeter = 2 * static_cast<i64>(D) * n - 2 * rec.max_bonds;
  if constexpr (D == 2) {
    rec.samples2 = std::move(samples);
  } else {
    rec.samples3 = std::move(samples);
  }
  return rec;
}

u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Best bond count over all k-subsets of a box of at most 63 sites, by
// Gosper's hack over bitmasks.
i64 max_subset_bonds(const std::array<i64, 3>& sides, int dimension, int k) {
  const std::size_t dims = static_cast<std::size_t>(dimension);
  std::array<u64, 3> stride{};
  u64 vol = 1;
  for (std::size_t i = dims; i-- > 0;) {
    stride[i] = vol;
    vol *= static_cast<u64>(sides[i]);
  }
  std::array<u64, 3> has_next{};
  for (u64 idx = 0; idx < vol; ++idx) {
    for (std::size_t a = 0; a < dims; ++a) {
      const u64 coord = (idx / stride[a]) % static_cast<u64>(sides[a]);
      if (coord + 1 < static_cast<u64>(sides[a])) has_next[a] |= u64{1} << idx;
    }
  }
  if (k == 0) return 0;
  const u64 limit = u64{1} << vol;
  i64 best = -1;
  u64 m = (u64{1} << k) - 1;
  while (m < limit) {
    i64 b = 0;
    for (std::size_t a = 0; a < dims; ++a) b += std::popcount(m & (m >> stride[a]) & has_next[a]);
    best = std::max(best, b);
    const u64 c = m & (~m + 1);
    const u64 r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return best;
}

void expect_line(std::istream& in, std::size_t& line_no, std::string& line) {
  if (!std::getline(in, line)) throw ParseError("unexpected end of oracle record", line_no + 1);
  ++line_no;
}

i64 expect_field(std::istream& in, std::size_t& line_no, const std::string& key) {
  std::string line;
  expect_line(in, line_no, line);
  std::istringstream fields(line);
  std::string name;
  i64 value = 0;
  if (!(fields >> name >> value) || name != key) throw ParseError("expected field '" + key + "'", line_no);
  return value;
}

}  // namespace

template <std::size_t D>
Config<D> Polyform<D>::to_config() const {
  std::vector<Point<D>> pts;
  pts.reserve(cells_.size());
  Point<D> lo = coords_[static_cast<std::size_t>(cells_[0])];
  for (int c : cells_) {
    const Point<D>& p = coords_[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < D; ++i) lo[i] = std::min(lo[i], p[i]);
    pts.push_back(p);
  }
  Point<D> shift;
  for (std::size_t i = 0; i < D; ++i) shift[i] = 1 - lo[i];
  for (auto& p : pts) p += shift;
  return Config<D>::from_points(std::move(pts));
}

template <std::size_t D>
u64 enumerate_connected(int n, const PolyformVisitor<D>& visit, const OracleOptions& opts) {
  check_guardrail(static_cast<int>(D), n, opts);
  return Redelmeier<D>(n, visit).run();
}

u64 count_connected(int dimension, int n, const OracleOptions& opts) {
  check_guardrail(dimension, n, opts);
  if (dimension == 2) return enumerate_connected<2>(n, nullptr, opts);
  return enumerate_connected<3>(n, nullptr, opts);
}

OracleRecord theta_bruteforce(int dimension, int n, const OracleOptions& opts) {
  check_guardrail(dimension, n, opts);
  return dimension == 2 ? theta_impl<2>(n, opts) : theta_impl<3>(n, opts);
}

bool verify_connectivity_reduction(int dimension, int n_max, std::array<i64, 3> sides) {
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("connectivity check: dimension must be 2 or 3");
  if (dimension == 2) sides[2] = 1;
  u64 vol = 1;
  for (i64 s : sides) {
    if (s < 1) throw std::invalid_argument("connectivity check: box sides must be positive");
    vol *= static_cast<u64>(s);
  }
  if (vol > 63) throw std::invalid_argument("connectivity check: box exceeds 63 sites");
  if (n_max < 1 || static_cast<u64>(n_max) > vol) throw std::invalid_argument("connectivity check: bad n_max");
  u64 work = 0;
  for (int k = 1; k <= n_max; ++k) work += binomial(vol, static_cast<u64>(k));
  if (work > 200'000'000) throw std::invalid_argument("connectivity check: too many subsets");

  for (int k = 1; k <= n_max; ++k) {
    const i64 any = max_subset_bonds(sides, dimension, k);
    const i64 connected = theta_bruteforce(dimension, k, {.allow_large = true, .sample_cap = 0}).max_bonds;
    if (any > connected) return false;
  }
  return true;
}

void write_record(std::ostream& out, const OracleRecord& rec) {
  out << "format_version " << kOracleFormatVersion << '\n';
  out << "code_version " << kOracleCodeVersion << '\n';
  out << "dimension " << rec.dimension << '\n';
  out << "n " << rec.n << '\n';
  out << "min_perimeter " << rec.min_perimeter << '\n';
  out << "max_bonds " << rec.max_bonds << '\n';
  out << "count " << rec.count << '\n';
  out << "minimizer_count " << rec.minimizer_count << '\n';
  out << "samples " << rec.sample_count() << '\n';
  auto emit = [&](const auto& samples) {
    for (const auto& c : samples) {
      out << "sample " << c.size() << '\n';
      write_config(out, c);
    }
  };
  if (rec.dimension == 2) emit(rec.samples2); else emit(rec.samples3);
}

OracleRecord read_record(std::istream& in) {
  std::size_t line_no = 0;
  OracleRecord rec;
  if (expect_field(in, line_no, "format_version") != kOracleFormatVersion) {
    throw ParseError("unsupported oracle format version", line_no);
  }
  std::string line;
  expect_line(in, line_no, line);
  if (line != std::string("code_version ") + kOracleCodeVersion) throw ParseError("code version mismatch", line_no);
  rec.dimension = static_cast<int>(expect_field(in, line_no, "dimension"));
  if (rec.dimension != 2 && rec.dimension != 3) throw ParseError("bad dimension", line_no);
  rec.n = expect_field(in, line_no, "n");
  rec.min_perimeter = expect_field(in, line_no, "min_perimeter");
  rec.max_bonds = expect_field(in, line_no, "max_bonds");
  rec.count = static_cast<u64>(expect_field(in, line_no, "count"));
  rec.minimizer_count = static_cast<u64>(expect_field(in, line_no, "minimizer_count"));
  const i64 k = expect_field(in, line_no, "samples");
  for (i64 s = 0; s < k; ++s) {
    const i64 size = expect_field(in, line_no, "sample");
    std::ostringstream block;
    for (i64 i = 0; i < size; ++i) {
      expect_line(in, line_no, line);
      block << line << '\n';
    }
    std::istringstream body(block.str());
    try {
      if (rec.dimension == 2) {
        rec.samples2.push_back(read_config<2>(body));
      } else {
        rec.samples3.push_back(read_config<3>(body));
      }
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad sample: ") + e.what(), line_no);
    }
  }
  return rec;
}

std::filesystem::path oracle_cache_path(const std::filesystem::path& dir, int dimension, int n) {
  return dir / ("oracle-d" + std::to_string(dimension) + "-n" + std::to_string(n) + "-" + kOracleCodeVersion + ".txt");
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* dir = std::getenv("EIP_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

OracleRecord load_or_compute(int dimension, int n, const std::optional<std::filesystem::path>& cache_dir,
                             const OracleOptions& opts) {
  check_guardrail(dimension, n, opts);
  if (cache_dir) {
    const auto path = oracle_cache_path(*cache_dir, dimension, n);
    std::ifstream in(path);
    if (in) {
      try {
        OracleRecord rec = read_record(in);
        if (rec.dimension == dimension && rec.n == n) return rec;
      } catch (const ParseError&) {
        // stale or corrupt; recompute below
      }
    }
  }
  OracleRecord rec = theta_bruteforce(dimension, n, opts);
  if (cache_dir) {
    std::filesystem::create_directories(*cache_dir);
    const auto path = oracle_cache_path(*cache_dir, dimension, n);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      write_record(out, rec);
    }
    std::filesystem::rename(tmp, path);
  }
  return rec;
}

bool cache_matches_recompute(const std::filesystem::path& dir, int dimension, int n, const OracleOptions& opts) {
  std::ifstream in(oracle_cache_path(dir, dimension, n), std::ios::binary);
  if (!in) return false;
  std::ostringstream cached;
  cached << in.rdbuf();
  std::ostringstream fresh;
  write_record(fresh, theta_bruteforce(dimension, n, opts));
  return cached.str() == fresh.str();
}

template class Polyform<2>;
template class Polyform<3>;
template u64 enumerate_connected<2>(int, const PolyformVisitor<2>&, const OracleOptions&);
template u64 enumerate_connected<3>(int, const PolyformVisitor<3>&, const OracleOptions&);

}  // namespace eip
