/*
 * Copyright 2026 The tccsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tcc/types.hpp"

namespace tcc {

std::string_view to_string(ConsistencyLevel l) {
  switch (l) {
    case ConsistencyLevel::Ec:
      return "ec";
    case ConsistencyLevel::Ryw:
      return "ryw";
    case ConsistencyLevel::Mr:
      return "mr";
    case ConsistencyLevel::Mw:
      return "mw";
    case ConsistencyLevel::Wfr:
      return "wfr";
    case ConsistencyLevel::Cc:
      return "cc";
  }
  throw std::invalid_argument("unknown consistency level");
}

ConsistencyLevel parse_level(std::string_view s) {
  if (s == "ec") return ConsistencyLevel::Ec;
  if (s == "ryw") return ConsistencyLevel::Ryw;
  if (s == "mr") return ConsistencyLevel::Mr;
  if (s == "mw") return ConsistencyLevel::Mw;
  if (s == "wfr") return ConsistencyLevel::Wfr;
  if (s == "cc") return ConsistencyLevel::Cc;
  throw std::invalid_argument("unknown consistency level: " + std::string(s));
}

}  // namespace tcc
