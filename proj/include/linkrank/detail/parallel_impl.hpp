/*
 * Copyright 2026 The linkrank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace linkrank {

template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (workers <= 1 || count < 2) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, count);
  const std::size_t step = (count + chunks - 1) / chunks;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(chunks);
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(count, begin + step);
    if (begin >= end) break;
    threads.emplace_back([&, c, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace linkrank
