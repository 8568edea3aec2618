#pragma once

#include <functional>

namespace ctps {

/// Worker count used by per-row loops. Values < 1 are treated as 1.
/// Every parallel loop in the library writes disjoint outputs, so results do
/// not depend on this setting.
void set_thread_count(int threads);
int thread_count();

/// Calls body(row) for every row in [0, rows), split into contiguous bands.
void parallel_rows(int rows, const std::function<void(int)>& body);

}  // namespace ctps
