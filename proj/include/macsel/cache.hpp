#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macsel/partition.hpp"
#include "macsel/ratfunc.hpp"

namespace macsel {

inline constexpr const char* kCacheSchema = "macsel-cache/1";

struct CachedPoly {
  std::map<Partition, RatFunc> coeffs;
  RatFunc norm;
};

// Append-only line-oriented store, one JSON record per (lambda, n). Records that
// fail to parse or whose checksum does not match are ignored (and recomputed by
// the caller); a file with a different schema header is discarded.
class PolyCache {
 public:
  PolyCache(std::filesystem::path dir, std::string family);

  std::optional<CachedPoly> load(const Partition& lambda, int n);
  void store(const Partition& lambda, int n, const CachedPoly& value);
  std::vector<std::pair<Partition, int>> list();
  void clear();
  std::size_t corrupt_records();
  const std::filesystem::path& path() const { return file_; }

 private:
  void read_all();
  std::filesystem::path file_;
  std::string family_;
  std::mutex mu_;
  bool loaded_ = false;
  std::size_t corrupt_ = 0;
  std::map<std::pair<Partition, int>, CachedPoly> records_;
};

}  // namespace macsel
