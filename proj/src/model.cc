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

#include "kxdyn/model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kxdyn/error.h"
#include "kxdyn/random.h"

namespace kxdyn {
namespace {

// Domain tags keep the keyed draws of different purposes apart.
constexpr std::uint64_t kTagType = 0x7479706500000001ULL;
constexpr std::uint64_t kTagPairArc = 0x6172630000000002ULL;
constexpr std::uint64_t kTagNddArc = 0x6e64640000000003ULL;
constexpr std::uint64_t kTagInSet = 0x696e736574000004ULL;

std::uint64_t as_word(int key) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(key));
}

}  // namespace

double ModelParams::p_high() const {
  if (n <= 0) return 0.0;
  return c * std::pow(static_cast<double>(n), -1.0 + sigma);
}

void ModelParams::validate() const {
  if (n <= 0) throw ModelError("n must be a positive integer");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ModelError("rho must lie in [0, 1]");
  if (!(c >= 0.0)) throw ModelError("c must be nonnegative");
  if (!(p > 0.0 && p <= 1.0)) throw ModelError("p must lie in (0, 1]");
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw ModelError("sigma must lie in [0, 1)");
  }
  if (ndd_count < 0 || ndd_count > 1) {
    throw ModelError("ndd_count must be 0 or 1");
  }
  const double ph = p_high();
  if (!(ph >= 0.0 && ph <= 1.0)) {
    std::ostringstream os;
    os << "p_H = c * n^(sigma - 1) = " << ph << " must lie in [0, 1]";
    throw ModelError(os.str());
  }
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os << "n=" << n << " rho=" << rho << " c=" << c << " p=" << p
     << " sigma=" << sigma << " ndd=" << ndd_count;
  return os.str();
}

std::vector<int> ArcModel::sources(int) const { return {}; }

RandomArcModel::RandomArcModel(const ModelParams& params, std::uint64_t seed)
    : n_(params.n),
      rho_(params.rho),
      p_high_(params.p_high()),
      p_low_(params.p_low()),
      seed_(seed) {
  params.validate();
}

NodeType RandomArcModel::type(int arrival) const {
  const double u = unit_double(hash_words({seed_, kTagType, as_word(arrival)}));
  return u < rho_ ? NodeType::kH : NodeType::kL;
}

bool RandomArcModel::lists_sources(NodeType t) const {
  const double prob = t == NodeType::kH ? p_high_ : p_low_;
  return prob > 0.0 && prob <= kListThreshold;
}

std::vector<int> RandomArcModel::sources(int dst_arrival) const {
  const double prob = type(dst_arrival) == NodeType::kH ? p_high_ : p_low_;
  std::vector<int> out;
  if (prob <= 0.0) return out;
  // Positions 0..n-2 enumerate the keys 1..n with dst_arrival skipped.
  const std::int64_t span = n_ - 1;
  Stream stream(hash_words({seed_, kTagInSet, as_word(dst_arrival)}));
  std::int64_t pos = stream.geometric_skip(prob, span);
  while (pos < span) {
    const int key = static_cast<int>(pos) + 1;
    out.push_back(key < dst_arrival ? key : key + 1);
    pos += 1 + stream.geometric_skip(prob, span);
  }
  return out;
}

bool RandomArcModel::arc(int src_key, int dst_arrival) const {
  if (src_key == dst_arrival) return false;
  const NodeType t = type(dst_arrival);
  const double prob = t == NodeType::kH ? p_high_ : p_low_;
  if (src_key < 0) {
    return unit_double(hash_words({seed_, kTagNddArc, as_word(src_key),
                                   as_word(dst_arrival)})) < prob;
  }
  if (lists_sources(t)) {
    const std::vector<int> in = sources(dst_arrival);
    return std::binary_search(in.begin(), in.end(), src_key);
  }
  return unit_double(hash_words({seed_, kTagPairArc, as_word(src_key),
                                 as_word(dst_arrival)})) < prob;
}

ScriptedArcModel::ScriptedArcModel(std::vector<NodeType> types,
                                   std::vector<std::pair<int, int>> arcs)
    : types_(std::move(types)), arcs_(arcs.begin(), arcs.end()) {
  for (const auto& [src, dst] : arcs_) {
    if (dst < 1 || dst > horizon() || src == 0 || src > horizon() ||
        src == dst) {
      throw ModelError("scripted arc out of range");
    }
  }
}

NodeType ScriptedArcModel::type(int arrival) const {
  return types_.at(static_cast<std::size_t>(arrival - 1));
}

bool ScriptedArcModel::arc(int src_key, int dst_arrival) const {
  return arcs_.contains({src_key, dst_arrival});
}

}  // namespace kxdyn
