// SPDX-License-Identifier: Apache-2.0
//
// ncsd - numerical laboratory for noncoherent MIMO singular detection
// Copyright (C) 2026 The ncsd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef NCSD_PARALLEL_HPP
#define NCSD_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace ncsd
{

/// Number of worker threads used by the library. 0 (default) means
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(chunk, begin, end) for every chunk of [0, total) of size `chunk`
/// (last chunk possibly shorter). Chunks are claimed dynamically by the
/// workers; the chunk boundaries depend only on (total, chunk), never on
/// the thread count, so per-chunk partial results reduced in chunk order are
/// reproducible. Exceptions from the body are rethrown on the caller.
void parallel_chunks(std::size_t total, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)> &body);

/// Convenience: body(i) for every i in [0, total).
void parallel_for(std::size_t total, const std::function<void(std::size_t)> &body);

} // namespace ncsd

#endif
