// Copyright 2026 The Interax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "interax/analysis.hpp"
#include "interax/axioms.hpp"
#include "interax/builtin_spec.hpp"
#include "interax/calculus.hpp"
#include "interax/combinatorics.hpp"
#include "interax/error.hpp"
#include "interax/external.hpp"
#include "interax/format.hpp"
#include "interax/game.hpp"
#include "interax/game_io.hpp"
#include "interax/indices.hpp"
#include "interax/multilinear.hpp"
#include "interax/parallel.hpp"
#include "interax/player_set.hpp"
#include "interax/quadrature.hpp"
#include "interax/sampling.hpp"
#include "interax/subset_transform.hpp"
