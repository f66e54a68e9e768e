#ifndef RELAYSIM_MC_HPP
#define RELAYSIM_MC_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <stdexcept>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "relaysim/sampler.hpp"

namespace relaysim {

// Sample mean and standard error of one statistic channel.
struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

inline constexpr std::size_t kMcBlockSize = 4096;

// Blockwise-deterministic Monte Carlo: the draw stream is partitioned into
// fixed-size blocks, block b is generated from (seed, b), and block partial
// sums are reduced in block order. The result is bit-identical for any
// worker count.
//
// F: void(const FadingDraw&, std::array<double, K>&) fills the per-draw
// statistics.
template <std::size_t K, class F>
std::array<MeanStd, K> monte_carlo(std::uint64_t seed, std::size_t n, unsigned workers, F&& per_draw) {
  if (n == 0) throw std::invalid_argument("n_samples must be positive");
  if (workers == 0) workers = 1;
  const std::size_t n_blocks = (n + kMcBlockSize - 1) / kMcBlockSize;

  struct BlockSums {
    std::array<double, K> sum{};
    std::array<double, K> sumsq{};
  };
  std::vector<BlockSums> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    FadingSampler sampler(seed, b);
    const std::size_t lo = b * kMcBlockSize;
    const std::size_t hi = std::min(lo + kMcBlockSize, n);
    BlockSums& out = blocks[b];
    std::array<double, K> v{};
    for (std::size_t i = lo; i < hi; ++i) {
      per_draw(sampler.draw(), v);
      for (std::size_t k = 0; k < K; ++k) {
        out.sum[k] += v[k];
        out.sumsq[k] += v[k] * v[k];
      }
    }
  };

  if (workers == 1 || n_blocks == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned nw = std::min<std::size_t>(workers, n_blocks);
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  // Ordered reduction; independent of which worker ran which block.
  std::array<double, K> sum{}, sumsq{};
  for (const BlockSums& b : blocks)
    for (std::size_t k = 0; k < K; ++k) {
      sum[k] += b.sum[k];
      sumsq[k] += b.sumsq[k];
    }

  std::array<MeanStd, K> out;
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < K; ++k) {
    out[k].n = n;
    out[k].mean = sum[k] / dn;
    const double var = std::max(0.0, sumsq[k] / dn - out[k].mean * out[k].mean);
    out[k].std_error = (n > 1) ? std::sqrt(var / dn) : 0.0;
  }
  return out;
}

}  // namespace relaysim

#endif  // RELAYSIM_MC_HPP
