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
 * @file json_io.hpp
 * JSON interchange for matrices: {"dim": n, "re": [[...]], "im": [[...]]}
 * with row-major n x n real arrays; "im" optional and defaults to zero.
 * Hermiticity is validated on load.
 */

#pragma once

#include <json.hpp>

#include "entcert/hermitian.hpp"

namespace entcert {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace entcert
