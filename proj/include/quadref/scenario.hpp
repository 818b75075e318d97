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


#ifndef QUADREF_SCENARIO_HPP_
#define QUADREF_SCENARIO_HPP_

#include <string>

#include "quadref/sim.hpp"

namespace quadref::scenario {

// Parses a scenario document (JSON). Missing keys take the defaults of the
// module configs; unknown keys and invalid values throw Error(kConfig).
sim::Scenario Parse(const std::string& text);

// Reads and parses a file. A missing or unreadable file is a config error.
sim::Scenario Load(const std::string& path);

}  // namespace quadref::scenario

#endif  // QUADREF_SCENARIO_HPP_
