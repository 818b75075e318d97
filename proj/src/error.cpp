// Copyright 2026 The quadref Authors
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

#include "quadref/error.hpp"

namespace quadref {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return "configuration error";
    case ErrorKind::kDegenerateSupport:
      return "degenerate support";
    case ErrorKind::kMapping:
      return "mapping error";
    case ErrorKind::kUndefinedZmp:
      return "undefined zmp";
    case ErrorKind::kAssembly:
      return "assembly error";
    case ErrorKind::kSimulation:
      return "simulation fault";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "unknown error";
}

}  // namespace quadref
