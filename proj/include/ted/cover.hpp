#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "ted/graph.hpp"

namespace ted {

/// Sorted duplicate-free set of EdgeRefs — the coverage currency of the
/// whole system. Deterministic iteration order by (graph_id, edge_id).
class CoverSet {
 public:
  CoverSet() = default;

  static CoverSet from_unsorted(std::vector<EdgeRef> refs) {
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    CoverSet c;
    c.refs_ = std::move(refs);
    return c;
  }

  /// Caller guarantees refs are strictly ascending.
  static CoverSet from_sorted(std::vector<EdgeRef> refs) {
    CoverSet c;
    c.refs_ = std::move(refs);
    return c;
  }

  size_t size() const { return refs_.size(); }
  bool empty() const { return refs_.empty(); }

  const std::vector<EdgeRef>& refs() const { return refs_; }
  auto begin() const { return refs_.begin(); }
  auto end() const { return refs_.end(); }

  bool contains(const EdgeRef& e) const {
    return std::binary_search(refs_.begin(), refs_.end(), e);
  }

  /// Sub-range of refs belonging to one graph.
  std::pair<std::vector<EdgeRef>::const_iterator, std::vector<EdgeRef>::const_iterator>
  graph_range(int32_t graph_id) const {
    EdgeRef lo{graph_id, 0};
    EdgeRef hi{graph_id + 1, 0};
    return {std::lower_bound(refs_.begin(), refs_.end(), lo),
            std::lower_bound(refs_.begin(), refs_.end(), hi)};
  }

  friend CoverSet set_union(const CoverSet& a, const CoverSet& b) {
    std::vector<EdgeRef> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  friend CoverSet set_difference(const CoverSet& a, const CoverSet& b) {
    std::vector<EdgeRef> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  bool operator==(const CoverSet&) const = default;

 private:
  std::vector<EdgeRef> refs_;
};

}  // namespace ted
