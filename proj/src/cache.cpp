#include "macsel/cache.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace macsel {

namespace {
std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

nlohmann::json header(const std::string& family) { return {{"schema", kCacheSchema}, {"family", family}}; }
}  // namespace

PolyCache::PolyCache(std::filesystem::path dir, std::string family)
    : file_(std::move(dir) / (family + ".cache")), family_(std::move(family)) {}

void PolyCache::read_all() {
  if (loaded_) return;
  loaded_ = true;
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line)) return;
  try {
    auto h = nlohmann::json::parse(line);
    if (h != header(family_)) {
      in.close();
      std::filesystem::remove(file_);
      return;
    }
  } catch (const std::exception&) {
    in.close();
    std::filesystem::remove(file_);
    return;
  }
  while (std::getline(in, line)) {
    try {
      auto j = nlohmann::json::parse(line);
      std::string body = j.at("coeffs").dump() + j.at("norm").dump();
      if (j.at("check").get<std::string>() != fnv_hex(body)) {
        ++corrupt_;
        continue;
      }
      CachedPoly cp;
      for (auto& e : j.at("coeffs")) cp.coeffs.emplace(e.at(0).get<Partition>(), RatFunc::parse(e.at(1).get<std::string>()));
      cp.norm = RatFunc::parse(j.at("norm").get<std::string>());
      records_[{j.at("lambda").get<Partition>(), j.at("n").get<int>()}] = std::move(cp);
    } catch (const std::exception&) {
      ++corrupt_;
    }
  }
}

std::optional<CachedPoly> PolyCache::load(const Partition& lambda, int n) {
  std::lock_guard<std::mutex> lock(mu_);
  read_all();
  auto it = records_.find({lambda, n});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void PolyCache::store(const Partition& lambda, int n, const CachedPoly& value) {
  std::lock_guard<std::mutex> lock(mu_);
  read_all();
  if (records_.count({lambda, n})) return;
  std::filesystem::create_directories(file_.parent_path());
  bool fresh = !std::filesystem::exists(file_);
  std::ofstream out(file_, std::ios::app);
  if (fresh) out << header(family_).dump() << "\n";
  nlohmann::json coeffs = nlohmann::json::array();
  for (auto& [mu, c] : value.coeffs) coeffs.push_back({mu, c.to_string()});
  nlohmann::json norm = value.norm.to_string();
  nlohmann::json rec = {{"lambda", lambda}, {"n", n}, {"coeffs", coeffs}, {"norm", norm},
                        {"check", fnv_hex(coeffs.dump() + norm.dump())}};
  out << rec.dump() << "\n";
  records_[{lambda, n}] = value;
}

std::vector<std::pair<Partition, int>> PolyCache::list() {
  std::lock_guard<std::mutex> lock(mu_);
  read_all();
  std::vector<std::pair<Partition, int>> keys;
  for (auto& [k, v] : records_) keys.push_back(k);
  return keys;
}

void PolyCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  std::filesystem::remove(file_);
  records_.clear();
  corrupt_ = 0;
  loaded_ = true;
}

std::size_t PolyCache::corrupt_records() {
  std::lock_guard<std::mutex> lock(mu_);
  read_all();
  return corrupt_;
}

}  // namespace macsel
