#include "macsel/partition.hpp"

#include <algorithm>
#include <numeric>

namespace macsel {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw InvalidPartition("negative part in partition");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidPartition("parts not weakly decreasing");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[j];
  return Partition(std::move(c));
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(parts_.empty() ? 1 : parts_[0] + 1, 0);
  for (int p : parts_) ++m[p];
  return m;
}

std::vector<Cell> Partition::cells() const {
  std::vector<Cell> out;
  out.reserve(size_);
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= parts_[i - 1]; ++j) out.push_back({i, j});
  return out;
}

int Partition::leg(const Cell& s) const {
  int l = 0;
  for (int i = s.i + 1; i <= length() && parts_[i - 1] >= s.j; ++i) ++l;
  return l;
}

long Partition::n_stat() const {
  long n = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) n += static_cast<long>(i) * parts_[i];
  return n;
}

std::vector<int> Partition::padded(int n) const {
  if (length() > n) throw InvalidPartition("partition longer than requested padding");
  std::vector<int> v(parts_);
  v.resize(n, 0);
  return v;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  // reverse lex: the lexicographically larger partition comes first
  if (auto c = b.parts_ <=> a.parts_; c != 0) return c;
  return std::strong_ordering::equal;
}

bool dominance_leq(const Partition& mu, const Partition& lambda) {
  if (mu.size() != lambda.size()) return false;
  int sm = 0, sl = 0;
  int len = std::max(mu.length(), lambda.length());
  for (int i = 1; i <= len; ++i) {
    sm += mu[i];
    sl += lambda[i];
    if (sm > sl) return false;
  }
  return true;
}

bool contains(const Partition& lambda, const Partition& mu) {
  if (mu.length() > lambda.length()) return false;
  for (int i = 1; i <= mu.length(); ++i)
    if (mu[i] > lambda[i]) return false;
  return true;
}

Partition complement(const Partition& lambda, int N, int n) {
  if (lambda.length() > n || lambda[1] > N) throw ComplementOutOfBox("partition " + lambda.to_string() + " not in box");
  std::vector<int> h(n);
  for (int i = 1; i <= n; ++i) h[i - 1] = N - lambda[n - i + 1];
  return Partition(std::move(h));
}

Partition box(int N, int n) { return Partition(std::vector<int>(n, N)); }

namespace {
void gen(int remaining, int max_part, int slots, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen(remaining - p, p, slots - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int w, int max_len, int max_part) {
  std::vector<Partition> out;
  if (w < 0) return out;
  std::vector<int> cur;
  gen(w, max_part < 0 ? w : max_part, max_len < 0 ? w : max_len, cur, out);
  return out;
}

std::vector<Partition> enumerate_partitions(int w_max, int max_len) {
  std::vector<Partition> out;
  for (int w = 0; w <= w_max; ++w) {
    auto ps = partitions_of(w, max_len);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<Partition> subpartitions(const Partition& lambda) {
  std::vector<Partition> out;
  for (int w = 0; w <= lambda.size(); ++w)
    for (auto& p : partitions_of(w, lambda.length(), lambda[1]))
      if (contains(lambda, p)) out.push_back(p);
  return out;
}

unsigned long long z_factor(const Partition& lambda) {
  auto m = lambda.multiplicities();
  unsigned long long z = 1;
  for (std::size_t i = 1; i < m.size(); ++i)
    for (int k = 1; k <= m[i]; ++k) z *= static_cast<unsigned long long>(k) * i;
  return z;
}

Partition join(const Partition& a, const Partition& b) {
  std::vector<int> v(a.parts());
  v.insert(v.end(), b.parts().begin(), b.parts().end());
  std::sort(v.rbegin(), v.rend());
  return Partition(std::move(v));
}

void to_json(nlohmann::json& j, const Partition& p) { j = p.parts(); }

void from_json(const nlohmann::json& j, Partition& p) {
  if (!j.is_array()) throw InvalidPartition("partition json must be an array");
  p = Partition(j.get<std::vector<int>>());
}

}  // namespace macsel
