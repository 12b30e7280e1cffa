// Copyright 2026 The entcert authors
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

/**
 * @file observables.hpp
 * Built-in polarization tomography observables: mu0 = |H><H| + |V><V|,
 * mu1 = |H><H|, mu2 = |D><D|, mu3 = |R><R| with D = (H - V)/sqrt(2) and
 * R = (H - i V)/sqrt(2), plus the 16 tensor pairs "muXY".
 */

#pragma once

#include <string>

#include "entcert/hermitian.hpp"

namespace entcert {

/// Single-qubit observable mu_i, i in 0..3, in the {|H>,|V>} basis.
HermitianMatrix mu_observable(int i);

/// Resolves "mu0".."mu3" (2x2) and "muXY" with X,Y in 0..3 (4x4 tensor pair).
/// Throws std::invalid_argument for unknown names.
HermitianMatrix builtin_observables(const std::string& name);

}  // namespace entcert
