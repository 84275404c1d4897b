// Copyright 2026 The Authors.
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

#ifndef KNAPSUB_KNAPSUB_HPP_
#define KNAPSUB_KNAPSUB_HPP_

#include "knapsub/core.hpp"
#include "knapsub/distributed.hpp"
#include "knapsub/exact.hpp"
#include "knapsub/objectives.hpp"
#include "knapsub/offline.hpp"
#include "knapsub/streaming.hpp"

#endif  // KNAPSUB_KNAPSUB_HPP_
