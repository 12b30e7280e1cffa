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

#include "entcert/observables.hpp"

namespace entcert {

HermitianMatrix mu_observable(int i) {
  CMatrix m(2, 2);
  switch (i) {
    case 0:
      m = CMatrix::Identity(2, 2);
      break;
    case 1:
      m << 1, 0, 0, 0;
      break;
    case 2:
      m << 0.5, -0.5, -0.5, 0.5;
      break;
    case 3:
      m << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(0.0, -0.5), Complex(0.5, 0.0);
      break;
    default:
      throw std::invalid_argument("mu_observable: index must be 0..3");
  }
  return HermitianMatrix::from(m);
}

HermitianMatrix builtin_observables(const std::string& name) {
  if (name.size() == 3 && name.rfind("mu", 0) == 0 && name[2] >= '0' && name[2] <= '3') {
    return mu_observable(name[2] - '0');
  }
  if (name.size() == 4 && name.rfind("mu", 0) == 0 && name[2] >= '0' && name[2] <= '3' &&
      name[3] >= '0' && name[3] <= '3') {
    return tensor_product(mu_observable(name[2] - '0'), mu_observable(name[3] - '0'));
  }
  throw std::invalid_argument("builtin_observables: unknown name '" + name + "'");
}

}  // namespace entcert
