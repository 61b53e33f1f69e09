#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace pvtau {

class partition {
 public:
  partition() = default;
  explicit partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // 1-based; zero beyond the diagram.
  int row(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
  int column(int j) const { return j >= 1 && j <= static_cast<int>(conj_.size()) ? conj_[j - 1] : 0; }
  partition conjugate() const { return partition(conj_); }

  friend bool operator==(const partition& a, const partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> conj_;
  int size_ = 0;
};

struct box {
  int row;
  int col;
};

using partition_pair = std::pair<partition, partition>;

// Reverse-lexicographic order, largest first part first.
std::vector<partition> enumerate_partitions(int n);
// |lambda| descending, then lambda and mu in reverse-lexicographic order.
std::vector<partition_pair> enumerate_pairs(int total);
// Cached; valid for the lifetime of the program.
const std::vector<partition_pair>& pairs_of_size(int total);

long partition_count(int n);

inline int arm(const partition& l, box b) { return l.row(b.row) - b.col; }
inline int leg(const partition& l, box b) { return l.column(b.col) - b.row; }

template <class F> void for_each_box(const partition& l, F&& f) {
  for (int i = 1; i <= l.length(); ++i)
    for (int j = 1; j <= l.row(i); ++j) f(box{i, j});
}

// Product of linear factors; T may be a series type over the scalar ring S.
template <class T, class S> T nekrasov_z(const partition& l, const partition& m, const T& theta, const S& beta) {
  T r(S(1));
  const S inv = S(1) / beta;
  for_each_box(l, [&](box b) {
    S c = inv * S(2 * arm(l, b) + 1) / S(2) + beta * S(2 * leg(m, b) + 1) / S(2);
    r = r * (theta + T(c));
  });
  for_each_box(m, [&](box b) {
    S c = inv * S(2 * arm(m, b) + 1) / S(2) + beta * S(2 * leg(l, b) + 1) / S(2);
    r = r * (T(c) - theta);
  });
  return r;
}

// Smallest |factor| / (|constant part| + |theta|) over the factors of nekrasov_z.
template <class S> double nekrasov_z_min_ratio(const partition& l, const partition& m, const S& theta, const S& beta,
                                               double (*mag)(const S&)) {
  double r = 1;
  const S inv = S(1) / beta;
  const double mt = mag(theta);
  for_each_box(l, [&](box b) {
    S c = inv * S(2 * arm(l, b) + 1) / S(2) + beta * S(2 * leg(m, b) + 1) / S(2);
    r = std::min(r, mag(S(c + theta)) / (mag(c) + mt));
  });
  for_each_box(m, [&](box b) {
    S c = inv * S(2 * arm(m, b) + 1) / S(2) + beta * S(2 * leg(l, b) + 1) / S(2);
    r = std::min(r, mag(S(c - theta)) / (mag(c) + mt));
  });
  return r;
}

}  // namespace pvtau
