#include "pvtau/partitions.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace pvtau {

partition::partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1 || (i > 0 && parts_[i] > parts_[i - 1]))
      throw std::invalid_argument("partition parts must be positive and weakly decreasing");
    size_ += parts_[i];
  }
  if (!parts_.empty()) {
    conj_.resize(parts_[0]);
    for (int j = 1; j <= parts_[0]; ++j) {
      int c = 0;
      for (int p : parts_)
        if (p >= j) ++c;
      conj_[j - 1] = c;
    }
  }
}

namespace {

void build(int n, int maxp, std::vector<int>& cur, std::vector<partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(n, maxp); k >= 1; --k) {
    cur.push_back(k);
    build(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<partition> enumerate_partitions(int n) {
  std::vector<partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  build(n, n, cur, out);
  return out;
}

std::vector<partition_pair> enumerate_pairs(int total) {
  std::vector<partition_pair> out;
  for (int a = total; a >= 0; --a) {
    auto ls = enumerate_partitions(a), ms = enumerate_partitions(total - a);
    for (const auto& l : ls)
      for (const auto& m : ms) out.emplace_back(l, m);
  }
  return out;
}

const std::vector<partition_pair>& pairs_of_size(int total) {
  static std::mutex mu;
  static std::map<int, std::vector<partition_pair>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(total);
  if (it == cache.end()) it = cache.emplace(total, enumerate_pairs(total)).first;
  return it->second;
}

long partition_count(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[m] += p[m - k];
  return n >= 0 ? p[n] : 0;
}

}  // namespace pvtau
