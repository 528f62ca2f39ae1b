#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace macsel {

struct InvalidPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ComplementOutOfBox : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Cell (i, j) of a Young diagram, 1-based row i and column j.
struct Cell {
  int i;
  int j;
};

class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  // 1-based part, zero beyond the length.
  int operator[](std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const { return size_; }
  bool empty() const { return parts_.empty(); }

  Partition conjugate() const;
  // multiplicities m_i for i = 1..max part (index 0 unused)
  std::vector<int> multiplicities() const;
  std::vector<Cell> cells() const;

  int arm(const Cell& s) const { return (*this)[s.i] - s.j; }
  int leg(const Cell& s) const;
  static int coarm(const Cell& s) { return s.j - 1; }
  static int coleg(const Cell& s) { return s.i - 1; }
  bool has_cell(const Cell& s) const { return s.i >= 1 && s.j >= 1 && s.j <= (*this)[s.i]; }

  // n(lambda) = sum (i-1) lambda_i
  long n_stat() const;

  // Parts padded with zeros to length n (throws if length() > n).
  std::vector<int> padded(int n) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // Graded, then reverse lexicographic within a weight (used as map key order).
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

bool dominance_leq(const Partition& mu, const Partition& lambda);
bool contains(const Partition& lambda, const Partition& mu);  // mu subset of lambda
// Complement in the box (N^n): hat_i = N - lambda_{n-i+1}.
Partition complement(const Partition& lambda, int N, int n);
Partition box(int N, int n);

// Partitions of weight w with at most max_len parts (max_len < 0: unbounded) and
// parts at most max_part (< 0: unbounded), in reverse lexicographic order.
std::vector<Partition> partitions_of(int w, int max_len = -1, int max_part = -1);
// All partitions of weight <= w_max, graded, reverse lex within a weight.
std::vector<Partition> enumerate_partitions(int w_max, int max_len = -1);
// Partitions contained in lambda.
std::vector<Partition> subpartitions(const Partition& lambda);

// z_lambda = prod_i m_i! i^{m_i}
unsigned long long z_factor(const Partition& lambda);

// Union of parts (multiset sum), used for products of power sums.
Partition join(const Partition& a, const Partition& b);

void to_json(nlohmann::json& j, const Partition& p);
void from_json(const nlohmann::json& j, Partition& p);

}  // namespace macsel

template <>
struct std::hash<macsel::Partition> {
  std::size_t operator()(const macsel::Partition& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.parts()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};
