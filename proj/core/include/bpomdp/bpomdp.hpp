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

#ifndef BPOMDP_BPOMDP_HPP_
#define BPOMDP_BPOMDP_HPP_

#include "bpomdp/allocator.hpp"
#include "bpomdp/evaluation.hpp"
#include "bpomdp/exact_solver.hpp"
#include "bpomdp/io.hpp"
#include "bpomdp/model.hpp"
#include "bpomdp/planner.hpp"
#include "bpomdp/rng.hpp"
#include "bpomdp/scenario.hpp"
#include "bpomdp/simulation.hpp"
#include "bpomdp/value_curve.hpp"

#endif  // BPOMDP_BPOMDP_HPP_
