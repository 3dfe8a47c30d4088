#pragma once

#include "format.hpp"
#include "lucasgcd/lucas.hpp"

namespace lucasgcd::cli {

// Desk-scale invariant suite over every module. Returns one row per
// property: (property, status, detail) with status "pass" or "fail".
// Output is deterministic for a fixed config, including thread count.
Table run_verify(const LucasParams& P, int threads);

// True when every row of a run_verify table passed.
bool all_passed(const Table& t);

}  // namespace lucasgcd::cli
