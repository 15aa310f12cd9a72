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

#include "symgraph/hashing.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>

namespace symgraph {

namespace {

using u128 = unsigned __int128;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) {
  return (static_cast<u128>(hi) << 64) | lo;
}

constexpr u128 kFnvOffset = make_u128(0x6c62272e07bb0142ULL, 0x62b821756295c58dULL);
constexpr u128 kFnvPrime = make_u128(0x0000000001000000ULL, 0x000000000000013BULL);

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string join_ints(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

// Initial per-node label string used by both refinement procedures.
std::string initial_label(const Graph& g, NodeId v, NodeId root, bool root_flag,
                          bool node_features) {
  std::string s = "r";
  s += (root_flag && v == root) ? '1' : '0';
  if (node_features) {
    s += "|d";
    s += join_ints(g.discrete(v));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Integer color refinement and individualization for the canonical form.

struct CanonInput {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge label)
  std::vector<std::string> labels;                    // initial label strings
  std::vector<int> initial;                           // ranks of labels
};

// Refines `colors` (ranks 0..k-1) to an equitable partition. New colors are
// ranks of (old color, sorted neighbor multiset), so they never merge cells
// and the numbering depends only on the isomorphism class.
std::vector<int> refine(const CanonInput& in, std::vector<int> colors) {
  int count = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  while (true) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> keys(in.n);
    for (int v = 0; v < in.n; ++v) {
      keys[v].first = colors[v];
      auto& nb = keys[v].second;
      nb.reserve(in.adj[v].size());
      for (auto [w, lab] : in.adj[v]) nb.emplace_back(lab, colors[w]);
      std::sort(nb.begin(), nb.end());
    }
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(in.n);
    for (int v = 0; v < in.n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) -
                                 sorted.begin());
    }
    const int next_count = static_cast<int>(sorted.size());
    colors = std::move(next);
    if (next_count == count) return colors;
    count = next_count;
  }
}

std::vector<int> individualize(const std::vector<int>& colors, int v) {
  std::vector<int> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) out[i] = 2 * colors[i] + 1;
  out[v] = 2 * colors[v];
  // Compact back to ranks; order is preserved.
  std::vector<int> values = out;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (auto& c : out) {
    c = static_cast<int>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
  }
  return out;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const CanonInput& in) : in_(in) {}

  std::string run() {
    std::vector<int> prefix;
    search(in_.initial, prefix);
    return best_;
  }

 private:
  // Leaf certificate: labels and edges listed under the discrete ordering.
  std::string certificate(const std::vector<int>& pos) const {
    std::vector<int> at(in_.n);
    for (int v = 0; v < in_.n; ++v) at[pos[v]] = v;
    std::string s = "n=" + std::to_string(in_.n) + ";V:";
    for (int p = 0; p < in_.n; ++p) {
      if (p) s += ',';
      s += in_.labels[at[p]];
    }
    std::vector<std::tuple<int, int, int>> edges;
    for (int v = 0; v < in_.n; ++v) {
      for (auto [w, lab] : in_.adj[v]) {
        if (pos[v] < pos[w]) edges.emplace_back(pos[v], pos[w], lab);
      }
    }
    std::sort(edges.begin(), edges.end());
    s += ";E:";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ',';
      auto [a, b, l] = edges[i];
      s += std::to_string(a) + '-' + std::to_string(b) + ':' + std::to_string(l);
    }
    return s;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    // from[v] == to[gamma(v)] for every v.
    std::vector<int> at(in_.n);
    for (int v = 0; v < in_.n; ++v) at[to[v]] = v;
    std::vector<int> gamma(in_.n);
    bool identity = true;
    for (int v = 0; v < in_.n; ++v) {
      gamma[v] = at[from[v]];
      identity = identity && gamma[v] == v;
    }
    if (!identity) generators_.push_back(std::move(gamma));
  }

  void leaf(const std::vector<int>& pos) {
    std::string cert = certificate(pos);
    if (!first_pos_) {
      first_pos_ = pos;
      first_ = cert;
      best_ = cert;
      best_pos_ = pos;
      return;
    }
    if (cert == first_) {
      record_automorphism(*first_pos_, pos);
    } else if (cert == best_) {
      record_automorphism(best_pos_, pos);
    } else if (cert < best_) {
      best_ = std::move(cert);
      best_pos_ = pos;
    }
  }

  int find(std::vector<int>& parent, int x) const {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  // Orbit representative of every vertex under generators fixing `prefix`.
  std::vector<int> stabilizer_orbits(const std::vector<int>& prefix) {
    std::vector<int> parent(in_.n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& g : generators_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) { return g[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < in_.n; ++v) {
        int a = find(parent, v), b = find(parent, g[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < in_.n; ++v) parent[v] = find(parent, v);
    return parent;
  }

  void search(const std::vector<int>& colors_in, std::vector<int>& prefix) {
    std::vector<int> colors = refine(in_, colors_in);
    std::vector<int> cell_size(in_.n, 0);
    for (int c : colors) ++cell_size[c];
    int target = -1;
    for (int c = 0; c < in_.n; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<int> explored;
    for (int v = 0; v < in_.n; ++v) {
      if (colors[v] != target) continue;
      if (!explored.empty()) {
        auto orbit = stabilizer_orbits(prefix);
        bool equivalent = std::any_of(explored.begin(), explored.end(),
                                      [&](int u) { return orbit[u] == orbit[v]; });
        if (equivalent) continue;
      }
      explored.push_back(v);
      prefix.push_back(v);
      search(individualize(colors, v), prefix);
      prefix.pop_back();
    }
  }

  const CanonInput& in_;
  std::optional<std::vector<int>> first_pos_;
  std::string first_;
  std::string best_;
  std::vector<int> best_pos_;
  std::vector<std::vector<int>> generators_;
};

std::string wl_signature_digest(const Subgraph& s, const HashConfig& config,
                                const char* tag) {
  WlOptions opts;
  opts.iterations = config.wl_iterations;
  opts.root_flag = config.rooted;
  opts.node_features = config.node_features;
  opts.edge_labels = config.edge_labels;
  ColorPartition p = wl_refine(s, opts);
  std::vector<std::string> sigs;
  sigs.reserve(s.local.node_count());
  for (NodeId v = 0; v < s.local.node_count(); ++v) {
    std::string sig = p.signatures[p.color[v]];
    if (config.rooted && v == s.root) sig = "*" + sig;
    sigs.push_back(std::move(sig));
  }
  std::sort(sigs.begin(), sigs.end());
  std::string text = tag;
  text += "|n=" + std::to_string(s.local.node_count());
  for (const auto& sig : sigs) {
    text += '|';
    text += sig;
  }
  return text;
}

}  // namespace

std::string Digest128::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return std::string(buf, 32);
}

Digest128 Digest128::from_hex(std::string_view hex) {
  if (hex.size() != 32) throw InputError("digest must be 32 hex digits: " + std::string(hex));
  Digest128 d;
  for (std::size_t i = 0; i < 32; ++i) {
    int h = hex_value(hex[i]);
    if (h < 0) throw InputError("invalid hex digit in digest: " + std::string(hex));
    auto& word = i < 16 ? d.hi : d.lo;
    word = (word << 4) | static_cast<std::uint64_t>(h);
  }
  return d;
}

Digest128 fnv1a128(std::string_view bytes) {
  u128 h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return {static_cast<std::uint64_t>(h >> 64), static_cast<std::uint64_t>(h)};
}

const char* hash_mode_name(HashMode mode) {
  switch (mode) {
    case HashMode::kWl:
      return "wl";
    case HashMode::kCanonical:
      return "canonical";
    case HashMode::kWlFallback:
      return "wl_fallback";
  }
  return "unknown";
}

HashMode hash_mode_from_name(std::string_view name) {
  if (name == "wl") return HashMode::kWl;
  if (name == "canonical") return HashMode::kCanonical;
  if (name == "wl_fallback") return HashMode::kWlFallback;
  throw InputError("unknown hash mode: " + std::string(name));
}

void HashConfig::validate() const {
  if (mode == HashMode::kWlFallback) throw InputError("wl_fallback is not a configurable mode");
  if (wl_iterations < 0) throw InputError("wl_iterations must be >= 0");
  if (canonical_size_limit < 1) throw InputError("canonical_size_limit must be >= 1");
}

ColorPartition wl_refine(const Subgraph& s, const WlOptions& options) {
  const Graph& g = s.local;
  const int n = g.node_count();
  std::vector<std::string> sig(n);
  for (NodeId v = 0; v < n; ++v) {
    sig[v] = fnv1a128(initial_label(g, v, s.root, options.root_flag, options.node_features)).hex();
  }
  auto count_classes = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  std::size_t classes = count_classes(sig);
  const int max_rounds = options.iterations > 0 ? options.iterations : std::max(n, 1);
  int rounds = 0;
  while (rounds < max_rounds) {
    std::vector<std::string> next(n);
    for (NodeId v = 0; v < n; ++v) {
      std::vector<std::string> nb;
      nb.reserve(g.degree(v));
      for (const auto& e : g.neighbors(v)) {
        std::string item = options.edge_labels ? std::to_string(g.edge_label(e.edge)) : "0";
        item += ':';
        item += sig[e.node];
        nb.push_back(std::move(item));
      }
      std::sort(nb.begin(), nb.end());
      std::string text = sig[v] + "(";
      for (const auto& item : nb) {
        text += item;
        text += ';';
      }
      text += ')';
      next[v] = fnv1a128(text).hex();
    }
    sig = std::move(next);
    ++rounds;
    std::size_t now = count_classes(sig);
    // Signatures extend the previous ones, so an unchanged count means the
    // partition is stable.
    if (now == classes) break;
    classes = now;
  }

  ColorPartition out;
  out.rounds = rounds;
  std::vector<std::string> distinct = sig;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  out.signatures = distinct;
  out.classes.assign(distinct.size(), {});
  out.color.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    int c = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
                             distinct.begin());
    out.color[v] = c;
    out.classes[c].push_back(v);
  }
  return out;
}

std::string canonical_form(const Subgraph& s, const HashConfig& config) {
  const Graph& g = s.local;
  const int n = g.node_count();
  if (n > config.canonical_size_limit) {
    throw InputError("subgraph with " + std::to_string(n) +
                     " nodes exceeds the canonical size limit " +
                     std::to_string(config.canonical_size_limit));
  }
  CanonInput in;
  in.n = n;
  in.adj.resize(n);
  in.labels.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    in.labels[v] = initial_label(g, v, s.root, config.rooted, config.node_features);
    for (const auto& e : g.neighbors(v)) {
      in.adj[v].emplace_back(e.node, config.edge_labels ? g.edge_label(e.edge) : 0);
    }
  }
  std::vector<std::string> distinct = in.labels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  in.initial.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    in.initial[v] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), in.labels[v]) - distinct.begin());
  }
  if (n == 0) return "n=0;V:;E:";
  return CanonicalSearch(in).run();
}

StructHash subgraph_hash(const Subgraph& s, const HashConfig& config) {
  config.validate();
  StructHash h;
  if (config.mode == HashMode::kCanonical &&
      s.local.node_count() <= config.canonical_size_limit) {
    h.mode = HashMode::kCanonical;
    h.digest = fnv1a128("canon|" + canonical_form(s, config));
    return h;
  }
  h.mode = config.mode == HashMode::kCanonical ? HashMode::kWlFallback : HashMode::kWl;
  h.digest = fnv1a128(wl_signature_digest(s, config, "wl"));
  return h;
}

}  // namespace symgraph
