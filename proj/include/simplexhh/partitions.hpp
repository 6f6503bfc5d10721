/* Copyright 2026 the simplexhh authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "simplexhh/errors.hpp"
#include "simplexhh/faceset.hpp"
#include "simplexhh/rng.hpp"
#include "simplexhh/util.hpp"

namespace simplexhh {

namespace detail {

// Bell(9) = 21147 keeps exhaustive sweeps fast; beyond that a caller must
// sample.
constexpr int kMaxEnumerationGround = 9;
constexpr int kMaxSampleGround = 64;

}  // namespace detail

/// Set partition of {0,...,ground_size-1} in canonical form: blocks of
/// sorted elements, ordered by their smallest element.
class Partition {
 public:
  Partition(std::vector<FaceSet> blocks, int ground_size)
      : blocks_(std::move(blocks)), ground_(ground_size) {
    if (ground_ < 1) throw GroundSetMismatch("empty ground set");
    std::vector<bool> seen(static_cast<std::size_t>(ground_), false);
    int covered = 0;
    for (const auto& b : blocks_) {
      if (b.empty()) throw Error("partition block must be nonempty");
      for (int i : b.indices()) {
        if (i >= ground_)
          throw IndexOutOfRange("partition element outside ground set");
        if (seen[static_cast<std::size_t>(i)])
          throw Error("partition blocks must be disjoint");
        seen[static_cast<std::size_t>(i)] = true;
        ++covered;
      }
    }
    if (covered != ground_)
      throw Error("partition blocks must cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const FaceSet& a, const FaceSet& b) {
                return a.indices()[0] < b.indices()[0];
              });
  }

  /// Builds from a restricted growth string a[0..m-1], a[0] = 0.
  static Partition from_rgs(const std::vector<int>& rgs) {
    if (rgs.empty()) throw GroundSetMismatch("empty growth string");
    int n_blocks = 0;
    for (int a : rgs) n_blocks = std::max(n_blocks, a + 1);
    std::vector<std::vector<int>> groups(
        static_cast<std::size_t>(n_blocks));
    for (std::size_t i = 0; i < rgs.size(); ++i)
      groups[static_cast<std::size_t>(rgs[i])].push_back(
          static_cast<int>(i));
    std::vector<FaceSet> blocks;
    blocks.reserve(groups.size());
    for (auto& g : groups) blocks.emplace_back(std::move(g));
    return Partition(std::move(blocks), static_cast<int>(rgs.size()));
  }

  int ground_size() const { return ground_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<FaceSet>& blocks() const { return blocks_; }

  /// Block index of each element.
  std::vector<int> element_to_block() const {
    std::vector<int> map(static_cast<std::size_t>(ground_), -1);
    for (int b = 0; b < num_blocks(); ++b)
      for (int i : blocks_[static_cast<std::size_t>(b)].indices())
        map[static_cast<std::size_t>(i)] = b;
    return map;
  }

  bool operator==(const Partition& other) const {
    return ground_ == other.ground_ && blocks_ == other.blocks_;
  }

 private:
  std::vector<FaceSet> blocks_;
  int ground_;
};

/// All partitions of {0,...,n} in growth-string lexicographic order; the
/// first is {N}, the last is all singletons.
inline std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw GroundSetMismatch("negative ground set");
  const int m = n + 1;
  if (m > detail::kMaxEnumerationGround)
    throw GroundSetTooLarge("exhaustive enumeration capped at n = 8");
  std::vector<Partition> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  while (true) {
    out.push_back(Partition::from_rgs(a));
    // next growth string: rightmost position that may still increase
    int i = m - 1;
    while (i >= 1) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j)
        prefix_max = std::max(prefix_max, a[static_cast<std::size_t>(j)]);
      if (a[static_cast<std::size_t>(i)] <= prefix_max) break;
      --i;
    }
    if (i < 1) break;
    ++a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) a[static_cast<std::size_t>(j)] = 0;
  }
  return out;
}

/// True iff every block of L lies inside some block of K.
inline bool refines(const Partition& L, const Partition& K) {
  if (L.ground_size() != K.ground_size())
    throw GroundSetMismatch("partitions of different ground sets");
  const std::vector<int> owner = K.element_to_block();
  for (const auto& block : L.blocks()) {
    const int home = owner[static_cast<std::size_t>(block.indices()[0])];
    for (int i : block.indices())
      if (owner[static_cast<std::size_t>(i)] != home) return false;
  }
  return true;
}

inline Partition singleton_partition(int n) {
  std::vector<FaceSet> blocks;
  for (int i = 0; i <= n; ++i) blocks.push_back(FaceSet{i});
  return Partition(std::move(blocks), n + 1);
}

inline Partition trivial_partition(int n) {
  return Partition({FaceSet::full(n + 1)}, n + 1);
}

namespace detail {

/// Recursively splits `remaining` (sorted) into blocks of size d; the
/// smallest remaining element always anchors the next block, which makes
/// each partition appear exactly once.
inline void equal_blocks_rec(const std::vector<int>& remaining, int d,
                             std::vector<FaceSet>& acc,
                             std::vector<Partition>& out, int ground) {
  if (remaining.empty()) {
    out.emplace_back(acc, ground);
    return;
  }
  const int anchor = remaining[0];
  std::vector<int> rest(remaining.begin() + 1, remaining.end());
  for_each_combination(
      static_cast<int>(rest.size()), d - 1, [&](const std::vector<int>& ix) {
        std::vector<int> block{anchor};
        std::vector<bool> used(rest.size(), false);
        for (int j : ix) {
          block.push_back(rest[static_cast<std::size_t>(j)]);
          used[static_cast<std::size_t>(j)] = true;
        }
        std::vector<int> next;
        for (std::size_t j = 0; j < rest.size(); ++j)
          if (!used[j]) next.push_back(rest[j]);
        acc.emplace_back(std::move(block));
        equal_blocks_rec(next, d, acc, out, ground);
        acc.pop_back();
      });
}

}  // namespace detail

/// All partitions of {0,...,n} into blocks of exactly d elements.
inline std::vector<Partition> equal_block_partitions(int n, int d) {
  const int m = n + 1;
  if (d < 1 || m % d != 0)
    throw NotADivisor("block size must divide the ground set size");
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<Partition> out;
  std::vector<FaceSet> acc;
  detail::equal_blocks_rec(all, d, acc, out, m);
  return out;
}

/// All partitions of {0,...,n} into floor((n+1)/k) blocks of size k plus,
/// when (n+1) mod k > 0, one remainder block of that size.
inline std::vector<Partition> group_splits(int n, int k) {
  const int m = n + 1;
  if (k < 1 || k > m) throw Error("group size must lie in 1..n+1");
  const int l = m % k;
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<Partition> out;
  if (l == 0) return equal_block_partitions(n, k);
  for_each_combination(m, l, [&](const std::vector<int>& rem_ix) {
    std::vector<bool> in_rem(static_cast<std::size_t>(m), false);
    std::vector<int> rem;
    for (int j : rem_ix) {
      rem.push_back(j);
      in_rem[static_cast<std::size_t>(j)] = true;
    }
    std::vector<int> rest;
    for (int i = 0; i < m; ++i)
      if (!in_rem[static_cast<std::size_t>(i)]) rest.push_back(i);
    std::vector<Partition> equal_parts;
    std::vector<FaceSet> acc{FaceSet(rem)};
    detail::equal_blocks_rec(rest, k, acc, equal_parts, m);
    for (auto& p : equal_parts) out.push_back(std::move(p));
  });
  return out;
}

/// Uniformly random partitions via completion counting on growth strings;
/// deterministic per seed.
inline std::vector<Partition> sample_partitions(int n, int count,
                                                std::uint64_t seed) {
  if (count < 1) throw Error("sample count must be >= 1");
  const int m = n + 1;
  if (m < 1) throw GroundSetMismatch("empty ground set");
  if (m > detail::kMaxSampleGround)
    throw GroundSetTooLarge("sampling capped at n = 63");
  // completions[r][b]: growth strings of length r given b blocks so far
  std::vector<std::vector<long double>> completions(
      static_cast<std::size_t>(m),
      std::vector<long double>(static_cast<std::size_t>(m + 1), 0));
  for (int b = 0; b <= m; ++b) completions[0][static_cast<std::size_t>(b)] = 1;
  for (int r = 1; r < m; ++r)
    for (int b = 1; b <= m - r; ++b)
      completions[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)] =
          b * completions[static_cast<std::size_t>(r - 1)]
                         [static_cast<std::size_t>(b)] +
          completions[static_cast<std::size_t>(r - 1)]
                     [static_cast<std::size_t>(b + 1)];
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(count));
  CounterRng rng(derive_seed(seed, "sample_partitions"));
  for (int c = 0; c < count; ++c) {
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    int blocks = 1;
    for (int pos = 1; pos < m; ++pos) {
      const int r = m - pos;  // positions left including this one
      const long double stay =
          completions[static_cast<std::size_t>(r - 1)]
                     [static_cast<std::size_t>(blocks)];
      const long double total =
          completions[static_cast<std::size_t>(r)]
                     [static_cast<std::size_t>(blocks)];
      const long double u = rng.next_unit() * total;
      if (u < blocks * stay) {
        a[static_cast<std::size_t>(pos)] =
            std::min(blocks - 1, static_cast<int>(u / stay));
      } else {
        a[static_cast<std::size_t>(pos)] = blocks;
        ++blocks;
      }
    }
    out.push_back(Partition::from_rgs(a));
  }
  return out;
}

/// Text form: blocks joined by '|', elements by ','  (e.g. "0,1|2").
inline std::string to_text(const Partition& p) {
  std::string s;
  for (int b = 0; b < p.num_blocks(); ++b) {
    if (b) s += "|";
    const auto& ix = p.blocks()[static_cast<std::size_t>(b)].indices();
    for (std::size_t i = 0; i < ix.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(ix[i]);
    }
  }
  return s;
}

/// Parses the text form; input blocks may be unordered.  When expected_n
/// is nonnegative the ground set must be {0,...,expected_n}.
inline Partition parse_partition(const std::string& text, int expected_n = -1) {
  std::vector<FaceSet> blocks;
  std::vector<int> current;
  std::string num;
  int max_elem = -1;
  const auto flush_num = [&]() {
    if (num.empty()) throw ParseError("empty element in partition text");
    for (char ch : num)
      if (ch < '0' || ch > '9')
        throw ParseError("partition elements must be nonnegative integers");
    const int v = std::stoi(num);
    max_elem = std::max(max_elem, v);
    current.push_back(v);
    num.clear();
  };
  const auto flush_block = [&]() {
    flush_num();
    blocks.emplace_back(current);
    current.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush_num();
    } else if (ch == '|') {
      flush_block();
    } else if (ch != ' ') {
      num += ch;
    }
  }
  if (text.empty()) throw ParseError("empty partition text");
  flush_block();
  const int ground = (expected_n >= 0) ? expected_n + 1 : max_elem + 1;
  try {
    return Partition(std::move(blocks), ground);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid partition: ") + e.what());
  }
}

}  // namespace simplexhh
