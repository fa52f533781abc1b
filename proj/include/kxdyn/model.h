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

// Generative model of a dynamic compatibility pool.
//
// Pairs arrive at times 1..n. A pair is highly sensitized (H) with probability
// rho, otherwise lowly sensitized (L). Any donor u is compatible with the
// patient of pair v with probability p_H = c * n^(sigma - 1) if v is H and
// p_L = p if v is L, independently over ordered pairs.
//
// Arc randomness is keyed, not sequential: whether u -> v exists is a pure
// function of (seed, key(u), key(v)). Keys are arrival times for pairs and
// -(j + 1) for the j-th non-directed donor. Two schedulers that remove
// different nodes therefore observe the same underlying graph, which is what
// paired comparisons between policies rely on.

#ifndef KXDYN_MODEL_H_
#define KXDYN_MODEL_H_

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kxdyn {

enum class NodeType : std::uint8_t { kH, kL };

inline char type_symbol(NodeType t) { return t == NodeType::kH ? 'H' : 'L'; }

struct ModelParams {
  int n = 0;
  double rho = 0.0;
  double c = 0.0;
  double p = 0.0;
  double sigma = 0.0;
  int ndd_count = 0;

  // c * n^(-1 + sigma).
  double p_high() const;
  double p_low() const { return p; }
  double arc_probability(NodeType target) const {
    return target == NodeType::kH ? p_high() : p_low();
  }

  // Throws ModelError naming the first violated bound.
  void validate() const;

  std::string describe() const;
};

// Source of the random (or scripted) compatibility structure.
class ArcModel {
 public:
  virtual ~ArcModel() = default;

  virtual NodeType type(int arrival) const = 0;

  // True iff the donor with key `src_key` is compatible with the patient of
  // the pair arriving at `dst_arrival`.
  virtual bool arc(int src_key, int dst_arrival) const = 0;

  // When true, sources() enumerates the pair keys pointing into pairs of this
  // type faster than per-pair arc() queries.
  virtual bool lists_sources(NodeType) const { return false; }

  // Sorted pair keys (excluding NDDs) with an arc into `dst_arrival`, over
  // the whole horizon 1..n.
  virtual std::vector<int> sources(int dst_arrival) const;
};

inline int ndd_key(int j) { return -(j + 1); }

// Random model. Types use one keyed draw per pair; arcs into sparse targets
// (probability at most kListThreshold) are drawn as a whole in-neighbourhood
// by geometric skipping over 1..n, arcs into dense targets by one keyed draw
// per ordered pair. Both give independent Bernoulli arcs.
class RandomArcModel final : public ArcModel {
 public:
  static constexpr double kListThreshold = 0.05;

  RandomArcModel(const ModelParams& params, std::uint64_t seed);

  NodeType type(int arrival) const override;
  bool arc(int src_key, int dst_arrival) const override;
  bool lists_sources(NodeType t) const override;
  std::vector<int> sources(int dst_arrival) const override;

  std::uint64_t seed() const { return seed_; }

 private:
  int n_;
  double rho_;
  double p_high_;
  double p_low_;
  std::uint64_t seed_;
};

// Explicit instance for tests and fixtures. types[t - 1] is the type of the
// pair arriving at t; arcs hold (src_key, dst_arrival).
class ScriptedArcModel final : public ArcModel {
 public:
  ScriptedArcModel(std::vector<NodeType> types,
                   std::vector<std::pair<int, int>> arcs);

  NodeType type(int arrival) const override;
  bool arc(int src_key, int dst_arrival) const override;

  int horizon() const { return static_cast<int>(types_.size()); }

 private:
  std::vector<NodeType> types_;
  std::set<std::pair<int, int>> arcs_;
};

}  // namespace kxdyn

#endif  // KXDYN_MODEL_H_
