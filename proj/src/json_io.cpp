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

#include "entcert/json_io.hpp"

#include <fstream>

namespace entcert {

Json matrix_to_json(const HermitianMatrix& m) {
  const int n = m.dim();
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < n; ++i) {
    Json rrow = Json::array();
    Json irow = Json::array();
    for (int j = 0; j < n; ++j) {
      rrow.push_back(m.raw()(i, j).real());
      irow.push_back(m.raw()(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  Json out;
  out["dim"] = n;
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

HermitianMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw std::invalid_argument("matrix JSON must contain \"dim\" and \"re\"");
  }
  const int n = j.at("dim").get<int>();
  if (n < 1) throw std::invalid_argument("matrix JSON: dim must be >= 1");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  if (static_cast<int>(re.size()) != n) {
    throw std::invalid_argument("matrix JSON: \"re\" must have dim rows");
  }
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& rrow = re.at(i);
    if (static_cast<int>(rrow.size()) != n) {
      throw std::invalid_argument("matrix JSON: \"re\" row length mismatch");
    }
    for (int k = 0; k < n; ++k) {
      double imval = 0.0;
      if (has_im) {
        const auto& im = j.at("im");
        if (static_cast<int>(im.size()) != n || static_cast<int>(im.at(i).size()) != n) {
          throw std::invalid_argument("matrix JSON: \"im\" shape mismatch");
        }
        imval = im.at(i).at(k).get<double>();
      }
      m(i, k) = Complex(rrow.at(k).get<double>(), imval);
    }
  }
  return HermitianMatrix::from(m);  // validates Hermiticity
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace entcert
