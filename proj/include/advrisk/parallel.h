// Copyright 2026 The Authors.
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

#ifndef ADVRISK_PARALLEL_H_
#define ADVRISK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace advrisk {

// Calls body(i) once for every i in [0, n) using up to `workers` threads
// (the calling thread included). Callers write results by index, so the
// output never depends on scheduling. The first exception thrown by any
// call is rethrown after all threads have joined.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace advrisk

#endif  // ADVRISK_PARALLEL_H_
