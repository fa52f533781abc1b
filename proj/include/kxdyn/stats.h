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

#ifndef KXDYN_STATS_H_
#define KXDYN_STATS_H_

#include <span>

namespace kxdyn {

struct Summary {
  int count = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;  // sample sd / sqrt(count); 0 below two samples
  double lo = 0.0;           // normal 95% interval
  double hi = 0.0;

  bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
};

inline constexpr double kZ95 = 1.959963984540054;

// Mean, standard error and two-sided 95% normal interval.
Summary summarize(std::span<const double> values);

}  // namespace kxdyn

#endif  // KXDYN_STATS_H_
