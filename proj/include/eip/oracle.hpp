#pragma once

// Exhaustive ground truth for small n: every connected configuration
// (fixed polyomino / polycube) is visited once, up to translation.
//
// Enumeration is Redelmeier's untried-set growth. The root is the
// lexicographically smallest cell, so each fixed shape has exactly one
// rooted copy in the half-space of cells lexicographically >= the origin.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "eip/lattice.hpp"

namespace eip {

inline constexpr int kOracleMaxN2 = 14;
inline constexpr int kOracleMaxN3 = 10;
inline constexpr int kOracleFormatVersion = 1;
inline constexpr const char* kOracleCodeVersion = "redelmeier-1";

struct OracleOptions {
  /// Lift the n <= 14 (2D) / n <= 10 (3D) guardrails.
  bool allow_large = false;
  std::size_t sample_cap = 100;
};

/// A configuration under construction as seen by the enumeration visitor.
/// Valid only for the duration of the callback.
template <std::size_t D>
class Polyform {
 public:
  Polyform(std::span<const int> cells, i64 bonds, std::span<const Point<D>> coords)
      : cells_(cells), bonds_(bonds), coords_(coords) {}

  i64 n() const { return static_cast<i64>(cells_.size()); }
  i64 bonds() const { return bonds_; }
  /// Points translated so the bounding box starts at (1, ..., 1).
  Config<D> to_config() const;

 private:
  std::span<const int> cells_;
  i64 bonds_;
  std::span<const Point<D>> coords_;
};

template <std::size_t D>
using PolyformVisitor = std::function<void(const Polyform<D>&)>;

/// Visits every connected n-cell configuration once. Returns the count.
template <std::size_t D>
u64 enumerate_connected(int n, const PolyformVisitor<D>& visit, const OracleOptions& opts = {});

/// Runtime-dimension count without a visitor.
u64 count_connected(int dimension, int n, const OracleOptions& opts = {});

struct OracleRecord {
  int dimension = 0;
  i64 n = 0;
  i64 min_perimeter = 0;
  i64 max_bonds = 0;
  u64 count = 0;
  /// Minimizers counted up to translation.
  u64 minimizer_count = 0;
  /// First minimizers in enumeration order, normalized to start at 1.
  std::vector<Config2> samples2;
  std::vector<Config3> samples3;

  std::size_t sample_count() const { return dimension == 2 ? samples2.size() : samples3.size(); }
  bool operator==(const OracleRecord&) const = default;
};

OracleRecord theta_bruteforce(int dimension, int n, const OracleOptions& opts = {});
inline OracleRecord theta3_bruteforce(int n, const OracleOptions& opts = {}) { return theta_bruteforce(3, n, opts); }
inline OracleRecord theta2_bruteforce(int d, const OracleOptions& opts = {}) { return theta_bruteforce(2, d, opts); }

/// True iff for every k <= n_max, no k-subset of the box (connected or not)
/// has more bonds than the best connected k-cell configuration. `sides` are
/// site counts per axis; for dimension 2 the third entry is ignored.
bool verify_connectivity_reduction(int dimension, int n_max, std::array<i64, 3> sides);

void write_record(std::ostream& out, const OracleRecord& rec);
/// Throws ParseError on malformed input.
OracleRecord read_record(std::istream& in);

/// Cache file name for (dimension, n) under the current code version.
std::filesystem::path oracle_cache_path(const std::filesystem::path& dir, int dimension, int n);

/// EIP_CACHE_DIR, if set and nonempty.
std::optional<std::filesystem::path> cache_dir_from_env();

/// Reads the cached record if present, otherwise computes and stores it.
OracleRecord load_or_compute(int dimension, int n, const std::optional<std::filesystem::path>& cache_dir,
                             const OracleOptions& opts = {});

/// Recomputes (dimension, n) and compares the serialized bytes with the
/// cache file. False if the file is missing or differs.
bool cache_matches_recompute(const std::filesystem::path& dir, int dimension, int n, const OracleOptions& opts = {});

}  // namespace eip
