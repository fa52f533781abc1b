// Copyright 2026 The kxdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KXDYN_GRAPH_H_
#define KXDYN_GRAPH_H_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "kxdyn/model.h"

namespace kxdyn {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeStatus : std::uint8_t {
  kActive,       // in the residual pool (NDDs: not yet used)
  kBridgeDonor,  // patient served, donor still available to extend a chain
  kRemoved,
};

struct Node {
  NodeType type = NodeType::kL;
  int arrival_time = 0;  // 0 for NDDs
  bool is_ndd = false;
  NodeStatus status = NodeStatus::kActive;
};

struct Arc {
  NodeId from;
  NodeId to;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Insertion-ordered set of node ids with O(1) insert/erase.
class IndexedSet {
 public:
  void insert(NodeId id);
  void erase(NodeId id);
  bool contains(NodeId id) const;
  std::span<const NodeId> items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<NodeId> items_;
  std::vector<std::int32_t> pos_;
};

// The dynamic compatibility graph restricted to what schedulers can consult.
//
// Node ids are insertion indices: NDDs first (ids 0..ndd_count-1, time 0),
// then pairs in arrival order. Arcs are only materialized between an arriving
// pair and nodes that are still live; arcs towards or from removed nodes are
// never consulted by any policy. Adjacency lists are sorted and pruned lazily.
//
// Confined to one thread at a time.
class GraphState {
 public:
  struct Arrival {
    NodeId id;
    std::vector<Arc> new_arcs;
  };

  GraphState(ModelParams params, std::shared_ptr<const ArcModel> model);

  // Explicit pool of types.size() pairs; arcs are (src_key, dst_arrival)
  // using arrival times 1..n for pairs and ndd_key(j) for donors.
  static GraphState scripted(std::vector<NodeType> types,
                             std::vector<std::pair<int, int>> arcs,
                             int ndd_count = 0);

  const ModelParams& params() const { return params_; }
  const ArcModel& model() const { return *model_; }

  int horizon() const { return params_.n; }
  int arrivals() const { return arrived_; }
  bool finished() const { return arrived_ >= params_.n; }

  // Admits the next pair. Throws StateError once n pairs have arrived.
  Arrival arrive();
  // Same as arrive() without materializing the list of new arcs.
  NodeId arrive_node();

  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  NodeType type(NodeId id) const { return nodes_[id].type; }
  std::span<const NodeId> ndd_ids() const { return ndd_ids_; }

  // Pair still waiting in the pool.
  bool is_active(NodeId id) const {
    return nodes_[id].status == NodeStatus::kActive && !nodes_[id].is_ndd;
  }
  // Node whose donor can still give (active pair, bridge donor, unused NDD).
  bool is_live_donor(NodeId id) const {
    return nodes_[id].status != NodeStatus::kRemoved;
  }

  // Marks active pairs as matched. Throws StateError (before changing
  // anything) if any id is not an active pair or appears twice.
  void remove_matched(std::span<const NodeId> ids);
  void remove_matched(std::initializer_list<NodeId> ids) {
    remove_matched(std::span<const NodeId>(ids.begin(), ids.size()));
  }
  // Active pair whose patient was served by a chain; its donor stays live.
  void make_bridge_donor(NodeId id);
  // Consumes the donor of an NDD or of the current bridge donor.
  void retire_donor(NodeId id);

  // Arc u -> v with u a live donor and v an active pair.
  bool has_arc(NodeId u, NodeId v) const;
  // Active pairs that u's donor is compatible with, ascending.
  const std::vector<NodeId>& out_arcs(NodeId u) const;
  // Live donors compatible with v's patient, ascending.
  const std::vector<NodeId>& in_arcs(NodeId v) const;
  // Active pairs forming a two-cycle with active pair v, ascending.
  const std::vector<NodeId>& mutual(NodeId v) const;

  std::vector<NodeId> active_nodes() const;
  int active_count() const { return static_cast<int>(active_.size()); }

 private:
  NodeId add_pair(std::vector<Arc>* record);
  NodeId id_of_key(int key) const { return params_.ndd_count + key - 1; }

  ModelParams params_;
  std::shared_ptr<const ArcModel> model_;
  int arrived_ = 0;
  std::vector<Node> nodes_;
  std::vector<NodeId> ndd_ids_;
  IndexedSet active_;           // active pairs
  IndexedSet donor_pairs_;      // active pairs and bridge donors
  IndexedSet active_unlisted_;  // active pairs whose type is not source-listed
  std::vector<std::vector<NodeId>> pending_;  // by arrival key
  mutable std::vector<std::vector<NodeId>> out_;
  mutable std::vector<std::vector<NodeId>> in_;
  mutable std::vector<std::vector<NodeId>> mutual_;
};

// Fresh pool with params.ndd_count NDDs and the keyed random model.
// Throws ModelError for invalid params.
GraphState new_pool(const ModelParams& params, std::uint64_t seed);

enum class EdgeLabel : std::uint8_t { kHH, kHL, kLL };

EdgeLabel edge_label(NodeType a, NodeType b);

// Two-cycles among active pairs, viewed as undirected edges.
struct UndirectedView {
  std::vector<NodeId> nodes;  // ascending
  std::vector<NodeType> types;  // parallel to nodes
  std::vector<std::pair<NodeId, NodeId>> edges;  // first < second, ascending

  NodeType type_of(NodeId id) const;
  EdgeLabel label(std::size_t edge) const {
    return edge_label(type_of(edges[edge].first), type_of(edges[edge].second));
  }
};

// All active pairs; drops L-L edges when exclude_ll.
UndirectedView reduced_undirected(const GraphState& state, bool exclude_ll);

// The union of connected components (in the same edge set) that contain an
// active node of `seeds`. Equivalent to reduced_undirected for any matching
// computation when every edge of the residual touches such a component.
UndirectedView reduced_component_view(const GraphState& state, bool exclude_ll,
                                      std::span<const NodeId> seeds);

}  // namespace kxdyn

#endif  // KXDYN_GRAPH_H_
