// Copyright 2026 The nstkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "nst/synthetic.hpp"
#include "nst/weights.hpp"

namespace nst::testing {

/// Default synthetic weights, built once per process.
inline const WeightStore& synthetic_store() {
  static const WeightStore store = make_synthetic_weights();
  return store;
}

}  // namespace nst::testing
