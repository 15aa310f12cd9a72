// Copyright 2026 The SymGraph Authors
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

// Isomorphism-invariant identifiers for rooted subgraphs.
//
// Two modes are available. The Weisfeiler-Lehman mode digests the multiset of
// stable color signatures; it is fast but merges some non-isomorphic graphs
// (a hexagon and two triangles, for example). The canonical mode computes an
// exact canonical form by individualization-refinement and digests that. The
// canonical mode falls back to Weisfeiler-Lehman above a size limit, and the
// resulting hash records the fallback.
//
// All digests are FNV-1a 128 over UTF-8 signature strings, so they are stable
// across processes and platforms and may be stored on disk.

#ifndef SYMGRAPH_HASHING_H_
#define SYMGRAPH_HASHING_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symgraph/graph.h"

namespace symgraph {

struct Digest128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  std::string hex() const;  // 32 lowercase hex digits
  static Digest128 from_hex(std::string_view hex);

  auto operator<=>(const Digest128&) const = default;
  bool operator==(const Digest128&) const = default;
};

// FNV-1a with the 128-bit offset basis and prime.
Digest128 fnv1a128(std::string_view bytes);

enum class HashMode { kWl, kCanonical, kWlFallback };

const char* hash_mode_name(HashMode mode);
HashMode hash_mode_from_name(std::string_view name);

struct StructHash {
  Digest128 digest;
  HashMode mode = HashMode::kWl;

  std::string hex() const { return digest.hex(); }
  std::string short_hex() const { return digest.hex().substr(0, 12); }

  // Ordered by digest; the mode is already folded into the digest.
  auto operator<=>(const StructHash& o) const { return digest <=> o.digest; }
  bool operator==(const StructHash& o) const { return digest == o.digest; }
};

struct HashConfig {
  HashMode mode = HashMode::kCanonical;
  // Refinement rounds for kWl; 0 refines until the partition is stable.
  int wl_iterations = 0;
  int canonical_size_limit = 16;
  // Mark the root so that distinct node roles within one subgraph differ.
  bool rooted = true;
  // Structural skeleton by default: features are encoded by the orbit
  // vectors, not by the hash.
  bool node_features = false;
  bool edge_labels = false;

  void validate() const;
};

struct WlOptions {
  int iterations = 0;  // 0 = until stable
  bool root_flag = true;
  bool node_features = true;
  bool edge_labels = true;
};

// Result of color refinement. Classes are ordered by signature string.
struct ColorPartition {
  std::vector<int> color;                   // per node, index into classes
  std::vector<std::vector<NodeId>> classes;  // node ids ascending
  std::vector<std::string> signatures;       // per class
  int rounds = 0;                            // refinement rounds performed

  std::size_t size() const { return classes.size(); }
};

ColorPartition wl_refine(const Subgraph& s, const WlOptions& options);

StructHash subgraph_hash(const Subgraph& s, const HashConfig& config);

// Exact canonical string of `s`; equal strings iff the (rooted, labeled
// according to `config`) graphs are isomorphic. Throws InputError when the
// graph exceeds config.canonical_size_limit.
std::string canonical_form(const Subgraph& s, const HashConfig& config = {});

}  // namespace symgraph

#endif  // SYMGRAPH_HASHING_H_
