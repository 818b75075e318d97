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


#ifndef QUADREF_OUTPUT_HPP_
#define QUADREF_OUTPUT_HPP_

#include <string>
#include <vector>

#include "quadref/sim.hpp"

namespace quadref::output {

// Column names of timeseries.csv, in order.
const std::vector<std::string>& CsvColumns();

int StatusCode(governor::Emitted status);

// All writers throw Error(kIo) when the file cannot be written.
void WriteCsv(const std::vector<sim::TickRecord>& rows, const std::string& path);
void WriteMetrics(const sim::Metrics& metrics, const std::string& path);
// p_y.svg, v_y.svg and zmp_xy.svg in out_dir.
void WritePlots(const sim::TimeSeries& series, const std::string& out_dir);

}  // namespace quadref::output

#endif  // QUADREF_OUTPUT_HPP_
