#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred::detail {

/// A simple path under rotation-extension moves, with O(1) position lookup.
///
/// Only vertices admitted by `mask` (all when null) may join the path.
class PosaPath {
 public:
  static constexpr std::int64_t kOff = -1;

  PosaPath(const Graph& g, const std::vector<char>* mask)
      : g_(g), mask_(mask), pos_(g.vertex_count(), kOff) {}

  void reset(Vertex start) {
    for (Vertex v : path_) pos_[v] = kOff;
    path_.clear();
    push_back(start);
  }

  bool allowed(Vertex v) const { return !mask_ || (*mask_)[v]; }
  bool on_path(Vertex v) const { return pos_[v] != kOff; }
  std::int64_t position(Vertex v) const { return pos_[v]; }

  std::size_t size() const { return path_.size(); }
  Vertex front() const { return path_.front(); }
  Vertex back() const { return path_.back(); }
  Vertex operator[](std::size_t i) const { return path_[i]; }
  const std::vector<Vertex>& vertices() const { return path_; }

  void push_back(Vertex v) {
    pos_[v] = static_cast<std::int64_t>(path_.size());
    path_.push_back(v);
  }

  /// Appends an admissible off-path neighbor of the back, scanning from a
  /// random offset. Returns false when the back has none.
  bool extend(CounterRng& rng) {
    const auto nb = g_.neighbors(back());
    if (nb.empty()) return false;
    const auto start = static_cast<std::size_t>(rng.below(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[(start + i) % nb.size()];
      if (!on_path(w) && allowed(w)) {
        push_back(w);
        return true;
      }
    }
    return false;
  }

  void extend_fully(CounterRng& rng) {
    while (extend(rng)) {
    }
  }

  /// Posa rotation around the back's neighbor at `pivot`: the suffix after
  /// `pivot` is reversed, so path[pivot + 1] becomes the new back.
  void rotate(std::size_t pivot) { reverse_range(pivot + 1, path_.size()); }

  void reverse_all() { reverse_range(0, path_.size()); }

  /// For a path whose ends are adjacent: re-cut the closed cycle so that
  /// path[i] becomes the back.
  void recut_cycle(std::size_t i) {
    std::rotate(path_.begin(), path_.begin() + static_cast<std::ptrdiff_t>(i + 1), path_.end());
    for (std::size_t j = 0; j < path_.size(); ++j) pos_[path_[j]] = static_cast<std::int64_t>(j);
  }

 private:
  void reverse_range(std::size_t lo, std::size_t hi) {
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(lo),
                 path_.begin() + static_cast<std::ptrdiff_t>(hi));
    for (std::size_t j = lo; j < hi; ++j) pos_[path_[j]] = static_cast<std::int64_t>(j);
  }

  const Graph& g_;
  const std::vector<char>* mask_;
  std::vector<std::int64_t> pos_;
  std::vector<Vertex> path_;
};

}  // namespace cycleshred::detail
