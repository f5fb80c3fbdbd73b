// Copyright 2026 The flagqec Authors
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

#ifndef FLAGQEC_FLAGQEC_HPP_
#define FLAGQEC_FLAGQEC_HPP_

#include "flagqec/pauli.hpp"
#include "flagqec/gate.hpp"
#include "flagqec/tableau.hpp"
#include "flagqec/dense.hpp"
#include "flagqec/circuit.hpp"
#include "flagqec/fault.hpp"
#include "flagqec/executor.hpp"
#include "flagqec/code.hpp"
#include "flagqec/code_tables.hpp"
#include "flagqec/protocol_circuits.hpp"
#include "flagqec/protocols.hpp"
#include "flagqec/metrics.hpp"
#include "flagqec/compile.hpp"
#include "flagqec/equivalence.hpp"
#include "flagqec/parallel.hpp"
#include "flagqec/fault_injection.hpp"
#include "flagqec/noise_mc.hpp"

#endif  // FLAGQEC_FLAGQEC_HPP_
