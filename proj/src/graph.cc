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

#include "kxdyn/graph.h"

#include <algorithm>
#include <deque>
#include <string>

#include "kxdyn/error.h"

namespace kxdyn {

void IndexedSet::insert(NodeId id) {
  if (static_cast<std::size_t>(id) >= pos_.size()) pos_.resize(id + 1, -1);
  if (pos_[id] >= 0) return;
  pos_[id] = static_cast<std::int32_t>(items_.size());
  items_.push_back(id);
}

void IndexedSet::erase(NodeId id) {
  if (!contains(id)) return;
  const std::int32_t at = pos_[id];
  const NodeId last = items_.back();
  items_[at] = last;
  pos_[last] = at;
  items_.pop_back();
  pos_[id] = -1;
}

bool IndexedSet::contains(NodeId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < pos_.size() && pos_[id] >= 0;
}

GraphState::GraphState(ModelParams params,
                       std::shared_ptr<const ArcModel> model)
    : params_(params), model_(std::move(model)) {
  if (params_.n <= 0) throw ModelError("n must be a positive integer");
  if (params_.ndd_count < 0) throw ModelError("ndd_count must be nonnegative");
  pending_.resize(static_cast<std::size_t>(params_.n) + 2);
  for (int j = 0; j < params_.ndd_count; ++j) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{NodeType::kL, 0, true, NodeStatus::kActive});
    ndd_ids_.push_back(id);
    out_.emplace_back();
    in_.emplace_back();
    mutual_.emplace_back();
  }
}

GraphState GraphState::scripted(std::vector<NodeType> types,
                                std::vector<std::pair<int, int>> arcs,
                                int ndd_count) {
  ModelParams params;
  params.n = static_cast<int>(types.size());
  params.ndd_count = ndd_count;
  for (const auto& [src, dst] : arcs) {
    if (src < 0 && -src > ndd_count) throw ModelError("unknown NDD key");
  }
  auto model =
      std::make_shared<ScriptedArcModel>(std::move(types), std::move(arcs));
  return GraphState(params, std::move(model));
}

GraphState::Arrival GraphState::arrive() {
  Arrival result;
  result.id = add_pair(&result.new_arcs);
  return result;
}

NodeId GraphState::arrive_node() { return add_pair(nullptr); }

NodeId GraphState::add_pair(std::vector<Arc>* record) {
  if (finished()) {
    throw StateError("arrival after all " + std::to_string(params_.n) +
                     " pairs have arrived");
  }
  const int key = ++arrived_;
  const ArcModel& model = *model_;
  const NodeType type = model.type(key);
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{type, key, false, NodeStatus::kActive});

  // Donors compatible with the new patient.
  std::vector<NodeId> sources;
  for (NodeId d : ndd_ids_) {
    if (is_live_donor(d) && model.arc(ndd_key(d), key)) sources.push_back(d);
  }
  if (model.lists_sources(type)) {
    for (int src_key : model.sources(key)) {
      if (src_key < key) {
        const NodeId u = id_of_key(src_key);
        if (is_live_donor(u)) sources.push_back(u);
      } else {
        pending_[src_key].push_back(id);
      }
    }
  } else {
    for (NodeId u : donor_pairs_.items()) {
      if (model.arc(nodes_[u].arrival_time, key)) sources.push_back(u);
    }
  }
  std::sort(sources.begin(), sources.end());

  // Active patients the new donor is compatible with.
  std::vector<NodeId> targets;
  for (NodeId u : pending_[key]) {
    if (is_active(u)) targets.push_back(u);
  }
  std::vector<NodeId>().swap(pending_[key]);
  for (NodeId u : active_unlisted_.items()) {
    if (model.arc(key, nodes_[u].arrival_time)) targets.push_back(u);
  }
  std::sort(targets.begin(), targets.end());

  std::vector<NodeId> both;
  std::set_intersection(sources.begin(), sources.end(), targets.begin(),
                        targets.end(), std::back_inserter(both));

  if (record != nullptr) {
    for (NodeId u : sources) record->push_back(Arc{u, id});
    for (NodeId v : targets) record->push_back(Arc{id, v});
  }
  for (NodeId u : sources) out_[u].push_back(id);
  for (NodeId v : targets) in_[v].push_back(id);
  for (NodeId v : both) mutual_[v].push_back(id);
  out_.push_back(std::move(targets));
  in_.push_back(std::move(sources));
  mutual_.push_back(std::move(both));

  active_.insert(id);
  donor_pairs_.insert(id);
  if (!model.lists_sources(type)) active_unlisted_.insert(id);
  return id;
}

void GraphState::remove_matched(std::span<const NodeId> ids) {
  std::vector<NodeId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const NodeId id = sorted[i];
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
      throw StateError("remove_matched: unknown node " + std::to_string(id));
    }
    if (!is_active(id)) {
      throw StateError("remove_matched: node " + std::to_string(id) +
                       " is not an active pair");
    }
    if (i > 0 && sorted[i - 1] == id) {
      throw StateError("remove_matched: node " + std::to_string(id) +
                       " listed twice");
    }
  }
  for (NodeId id : sorted) {
    nodes_[id].status = NodeStatus::kRemoved;
    active_.erase(id);
    donor_pairs_.erase(id);
    active_unlisted_.erase(id);
  }
}

void GraphState::make_bridge_donor(NodeId id) {
  if (!is_active(id)) {
    throw StateError("make_bridge_donor: node " + std::to_string(id) +
                     " is not an active pair");
  }
  nodes_[id].status = NodeStatus::kBridgeDonor;
  active_.erase(id);
  active_unlisted_.erase(id);
}

void GraphState::retire_donor(NodeId id) {
  const Node& n = nodes_.at(id);
  const bool ndd = n.is_ndd && n.status == NodeStatus::kActive;
  if (!ndd && n.status != NodeStatus::kBridgeDonor) {
    throw StateError("retire_donor: node " + std::to_string(id) +
                     " is neither an unused NDD nor a bridge donor");
  }
  nodes_[id].status = NodeStatus::kRemoved;
  donor_pairs_.erase(id);
}

bool GraphState::has_arc(NodeId u, NodeId v) const {
  if (!is_live_donor(u) || !is_active(v)) return false;
  const auto& out = out_[u];
  return std::binary_search(out.begin(), out.end(), v);
}

const std::vector<NodeId>& GraphState::out_arcs(NodeId u) const {
  auto& out = out_[u];
  std::erase_if(out, [this](NodeId v) { return !is_active(v); });
  return out;
}

const std::vector<NodeId>& GraphState::in_arcs(NodeId v) const {
  auto& in = in_[v];
  std::erase_if(in, [this](NodeId u) { return !is_live_donor(u); });
  return in;
}

const std::vector<NodeId>& GraphState::mutual(NodeId v) const {
  auto& m = mutual_[v];
  std::erase_if(m, [this](NodeId u) { return !is_active(u); });
  return m;
}

std::vector<NodeId> GraphState::active_nodes() const {
  std::vector<NodeId> ids(active_.items().begin(), active_.items().end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

GraphState new_pool(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  return GraphState(params, std::make_shared<RandomArcModel>(params, seed));
}

EdgeLabel edge_label(NodeType a, NodeType b) {
  if (a == NodeType::kH && b == NodeType::kH) return EdgeLabel::kHH;
  if (a == NodeType::kL && b == NodeType::kL) return EdgeLabel::kLL;
  return EdgeLabel::kHL;
}

NodeType UndirectedView::type_of(NodeId id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) {
    throw std::out_of_range("node " + std::to_string(id) + " not in view");
  }
  return types[static_cast<std::size_t>(it - nodes.begin())];
}

namespace {

bool keep_edge(const GraphState& state, bool exclude_ll, NodeId u, NodeId v) {
  return !(exclude_ll && state.type(u) == NodeType::kL &&
           state.type(v) == NodeType::kL);
}

UndirectedView view_over(const GraphState& state, bool exclude_ll,
                         std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  UndirectedView view;
  view.types.reserve(nodes.size());
  for (NodeId u : nodes) {
    view.types.push_back(state.type(u));
    for (NodeId v : state.mutual(u)) {
      if (u < v && keep_edge(state, exclude_ll, u, v)) {
        view.edges.emplace_back(u, v);
      }
    }
  }
  view.nodes = std::move(nodes);
  return view;
}

}  // namespace

UndirectedView reduced_undirected(const GraphState& state, bool exclude_ll) {
  return view_over(state, exclude_ll, state.active_nodes());
}

UndirectedView reduced_component_view(const GraphState& state, bool exclude_ll,
                                      std::span<const NodeId> seeds) {
  std::vector<char> seen(state.node_count(), 0);
  std::vector<NodeId> nodes;
  std::deque<NodeId> queue;
  for (NodeId s : seeds) {
    if (!state.is_active(s) || seen[s]) continue;
    seen[s] = 1;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      nodes.push_back(u);
      for (NodeId v : state.mutual(u)) {
        if (!seen[v] && keep_edge(state, exclude_ll, u, v)) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return view_over(state, exclude_ll, std::move(nodes));
}

}  // namespace kxdyn
