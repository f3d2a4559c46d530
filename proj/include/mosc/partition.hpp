#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mosc {

// Cluster assignment of all n nodes into k clusters, ids 0..k-1.
// Every cluster is nonempty.
class Partition {
 public:
  Partition() = default;

  Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("partition needs k >= 1");
    std::vector<long> sizes(k_, 0);
    for (int l : labels_) {
      if (l < 0 || l >= k_) throw std::invalid_argument("cluster label out of range");
      ++sizes[l];
    }
    for (int c = 0; c < k_; ++c)
      if (sizes[c] == 0)
        throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
  }

  // Bi-partition from a membership test: cluster 0 = the set, 1 = complement.
  template <typename Pred>
  static Partition bipartition(int n, Pred in_set) {
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = in_set(v) ? 0 : 1;
    return Partition(std::move(labels), 2);
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int k() const { return k_; }
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  std::vector<long> cluster_sizes() const {
    std::vector<long> sizes(k_, 0);
    for (int l : labels_) ++sizes[l];
    return sizes;
  }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

}  // namespace mosc
