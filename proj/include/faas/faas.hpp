// Copyright 2026 The FaaS Authors
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

// Umbrella header.

#ifndef FAAS_FAAS_HPP_
#define FAAS_FAAS_HPP_

#include "faas/auditor.hpp"
#include "faas/bench.hpp"
#include "faas/board.hpp"
#include "faas/board_http.hpp"
#include "faas/bytes.hpp"
#include "faas/codec.hpp"
#include "faas/dataset.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/metrics.hpp"
#include "faas/parallel.hpp"
#include "faas/permutation.hpp"
#include "faas/prover.hpp"
#include "faas/tables.hpp"
#include "faas/zkp.hpp"

#endif  // FAAS_FAAS_HPP_
