#include "lacuna/qnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lacuna/kfunctional.hpp"

namespace lacuna {

namespace {

constexpr int kMaxN = 14;

std::vector<int> mask_to_block(unsigned mask) {
  std::vector<int> b;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) b.push_back(i + 1);
  return b;
}

void canonicalize(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
}

// f[j][m]: best value over partitions of mask m into at most j blocks,
// the block containing the least element of m chosen first.
struct QnormTable {
  int n = 0;
  std::vector<double> root;               // sqrt of per-mask squared sums
  std::vector<std::vector<double>> f;     // layers 0..jmax

  QnormTable(const CoefficientVector& a, int jmax) {
    n = static_cast<int>(a.size());
    const unsigned full = (1u << n) - 1u;
    std::vector<double> sq(full + 1, 0.0);
    root.assign(full + 1, 0.0);
    for (unsigned m = 1; m <= full; ++m) {
      unsigned low = m & (m - 1);
      int bit = __builtin_ctz(m);
      sq[m] = sq[low] + a[bit] * a[bit];
      root[m] = std::sqrt(sq[m]);
    }
    f.assign(jmax + 1, std::vector<double>(full + 1, 0.0));
    for (unsigned m = 1; m <= full; ++m) f[1][m] = root[m];
    for (int j = 2; j <= jmax; ++j) {
      for (unsigned m = 1; m <= full; ++m) {
        unsigned low = m & ~(m - 1);
        unsigned rest = m ^ low;
        const std::vector<double>& prev = f[j - 1];
        double best = 0.0;
        unsigned sub = rest;
        while (true) {
          unsigned block = sub | low;
          double v = root[block] + prev[m ^ block];
          if (v > best) best = v;
          if (sub == 0) break;
          sub = (sub - 1) & rest;
        }
        f[j][m] = best;
      }
    }
  }
};

}  // namespace

PartitionResult q_norm_exact(const CoefficientVector& a, int t) {
  const int n = static_cast<int>(a.size());
  if (n > kMaxN)
    throw DimensionTooLarge("q_norm_exact: n = " + std::to_string(n) +
                            " exceeds enumeration bound " +
                            std::to_string(kMaxN));
  if (t < 1) throw Error("q_norm_exact: t must be >= 1");

  PartitionResult out;
  if (t >= n) {
    // Singletons: sum of block norms collapses to the l1 norm.
    long double v = 0.0L;
    for (int i = 0; i < n; ++i) {
      out.blocks.push_back({i + 1});
      v += std::fabs(a[i]);
    }
    out.value = static_cast<double>(v);
    return out;
  }

  QnormTable tab(a, t);
  const unsigned full = (1u << n) - 1u;
  out.value = tab.f[t][full];

  // Reconstruct the lexicographically-smallest optimal structure: at each
  // step pick the smallest feasible first block among value-preserving ones.
  unsigned m = full;
  int j = t;
  while (m != 0) {
    unsigned low = m & ~(m - 1);
    unsigned rest = m ^ low;
    double target = tab.f[j][m];
    std::vector<int> chosen;
    unsigned chosen_mask = 0;
    unsigned sub = rest;
    while (true) {
      unsigned block = sub | low;
      double v = (j >= 2) ? tab.root[block] + tab.f[j - 1][m ^ block]
                          : (block == m ? tab.root[block] : -1.0);
      if (v == target) {
        auto cand = mask_to_block(block);
        if (chosen.empty() || cand < chosen) {
          chosen = std::move(cand);
          chosen_mask = block;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
    out.blocks.push_back(chosen);
    m ^= chosen_mask;
    if (j > 1) --j;
  }
  canonicalize(out.blocks);
  return out;
}

std::vector<double> q_norm_profile(const CoefficientVector& a) {
  const int n = static_cast<int>(a.size());
  if (n > kMaxN)
    throw DimensionTooLarge("q_norm_profile: n = " + std::to_string(n) +
                            " exceeds enumeration bound " +
                            std::to_string(kMaxN));
  QnormTable tab(a, n - 1 >= 1 ? n - 1 : 1);
  const unsigned full = (1u << n) - 1u;
  std::vector<double> out(n);
  for (int t = 1; t < n; ++t) out[t - 1] = tab.f[t][full];
  out[n - 1] = a.l1();
  return out;
}

PartitionResult q_norm_heuristic(const CoefficientVector& a, int t) {
  const int n = static_cast<int>(a.size());
  if (t < 1) throw Error("q_norm_heuristic: t must be >= 1");
  const int nb = std::min(t, n);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[x] * a[x] > a[y] * a[y];
  });

  std::vector<double> sums(nb, 0.0);
  std::vector<int> assign(n, 0);
  for (int idx : order) {
    int target = static_cast<int>(
        std::min_element(sums.begin(), sums.end()) - sums.begin());
    assign[idx] = target;
    sums[target] += a[idx] * a[idx];
  }

  // Single-move local search on strict improvement.
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      double s = a[i] * a[i];
      if (s == 0.0) continue;
      int src = assign[i];
      double best_gain = 1e-14;
      int best_dst = -1;
      for (int dst = 0; dst < nb; ++dst) {
        if (dst == src) continue;
        double gain = std::sqrt(sums[src] - s) + std::sqrt(sums[dst] + s) -
                      std::sqrt(sums[src]) - std::sqrt(sums[dst]);
        if (gain > best_gain) {
          best_gain = gain;
          best_dst = dst;
        }
      }
      if (best_dst >= 0) {
        sums[src] -= s;
        sums[best_dst] += s;
        assign[i] = best_dst;
        moved = true;
      }
    }
  }

  PartitionResult out;
  double v = 0.0;
  for (double s : sums) v += std::sqrt(s);
  out.value = v;
  std::vector<std::vector<int>> blocks(nb);
  for (int i = 0; i < n; ++i) blocks[assign[i]].push_back(i + 1);
  for (auto& b : blocks)
    if (!b.empty()) out.blocks.push_back(b);
  canonicalize(out.blocks);
  return out;
}

SandwichReport sandwich_check(const CoefficientVector& a, int t_squared) {
  SandwichReport r;
  r.q = q_norm_exact(a, t_squared).value;
  r.k = k_exact(a, std::sqrt(static_cast<double>(t_squared))).value;
  r.lower_ok = r.q <= r.k + 1e-9;
  r.upper_ok = r.k <= std::sqrt(2.0) * r.q + 1e-9;
  return r;
}

}  // namespace lacuna
