#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "lucasgcd/modmath.hpp"

namespace lucasgcd {

// Compensated (Kahan) accumulator. Summation order is part of the output
// contract here, so every consumer feeds terms in a fixed order.
struct kahan_sum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

inline constexpr i64 default_chunk = i64(1) << 15;

// Deterministic chunked map: [begin, end) is cut into fixed-size chunks (the
// chunk size never depends on the thread count), workers fill per-chunk slots,
// and results come back in chunk-index order. Downstream reductions over the
// returned vector are therefore bit-identical for any thread count.
template <class T, class ChunkFn>
std::vector<T> chunked_map(i64 begin, i64 end, i64 chunk, int threads, ChunkFn fn) {
  std::vector<T> parts;
  if (end <= begin) return parts;
  i64 nchunks = (end - begin + chunk - 1) / chunk;
  parts.resize(nchunks);
  auto run = [&](i64 k) {
    i64 lo = begin + k * chunk;
    i64 hi = std::min(end, lo + chunk);
    parts[(size_t)k] = fn(lo, hi);
  };
  i64 nworkers = std::min<i64>(std::max(threads, 1), nchunks);
  if (nworkers <= 1) {
    for (i64 k = 0; k < nchunks; ++k) run(k);
    return parts;
  }
  std::atomic<i64> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr eptr;
  std::mutex emu;
  std::vector<std::thread> pool;
  pool.reserve((size_t)nworkers);
  for (i64 w = 0; w < nworkers; ++w) {
    pool.emplace_back([&] {
      i64 k;
      while (!failed.load(std::memory_order_relaxed) && (k = next.fetch_add(1)) < nchunks) {
        try {
          run(k);
        } catch (...) {
          std::lock_guard<std::mutex> lk(emu);
          if (!eptr) eptr = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (eptr) std::rethrow_exception(eptr);
  return parts;
}

// Chunk-ordered compensated sum: per-chunk Kahan partials, merged in order.
template <class ChunkFn>
double chunked_sum(i64 begin, i64 end, i64 chunk, int threads, ChunkFn per_chunk_sum) {
  auto parts = chunked_map<double>(begin, end, chunk, threads, per_chunk_sum);
  kahan_sum acc;
  for (double p : parts) acc.add(p);
  return acc.sum;
}

}  // namespace lucasgcd
