#include "ier/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>

#include "ier/errors.hpp"

namespace ier {

namespace {

std::vector<int> canonicalize(const std::vector<int>& labels) {
  std::map<int, int> renumber;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int label : labels) {
    auto [it, inserted] = renumber.try_emplace(label, static_cast<int>(renumber.size()));
    out.push_back(it->second);
  }
  return out;
}

void check_enumeration_bound(int k) {
  if (k < 1 || k > kMaxEnumeratedSize) {
    throw ResourceError("partition enumeration needs 1 <= k <= " +
                        std::to_string(kMaxEnumeratedSize) + ", got k = " + std::to_string(k));
  }
}

// Permutation on {0..k-1} whose cycles are the blocks read in ascending order.
std::vector<int> as_permutation(const Partition& p) {
  std::vector<int> perm(p.ground_size());
  for (const auto& block : p.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      perm[block[i] - 1] = block[(i + 1) % block.size()] - 1;
    }
  }
  return perm;
}

Partition from_cycles(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  std::vector<int> labels(k, -1);
  int next = 0;
  for (int start = 0; start < k; ++start) {
    if (labels[start] >= 0) continue;
    for (int x = start; labels[x] < 0; x = perm[x]) labels[x] = next;
    ++next;
  }
  return Partition::from_labels(labels);
}

}  // namespace

Partition::Partition(std::vector<int> canonical_labels) : labels_(std::move(canonical_labels)) {
  block_count_ = labels_.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels_.begin(), labels_.end())) + 1;
}

Partition::Partition(int k, const std::vector<Block>& blocks) {
  if (k < 0) throw DomainError("partition ground set size must be non-negative");
  std::vector<int> labels(k, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw DomainError("partition blocks must be non-empty");
    for (int x : blocks[b]) {
      if (x < 1 || x > k) {
        throw DomainError("element " + std::to_string(x) + " outside {1.." + std::to_string(k) + "}");
      }
      if (labels[x - 1] >= 0) throw DomainError("element " + std::to_string(x) + " appears twice");
      labels[x - 1] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < k; ++i) {
    if (labels[i] < 0) throw DomainError("element " + std::to_string(i + 1) + " is not covered");
  }
  *this = Partition(canonicalize(labels));
}

Partition Partition::from_labels(const std::vector<int>& labels) { return Partition(canonicalize(labels)); }

Partition Partition::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw DomainError("partition must be written as {a,b|c,...}: '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<Block> blocks;
  int k = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t bar = std::min(text.find('|', start), text.size());
    std::string_view block_text = text.substr(start, bar - start);
    Block block;
    std::size_t pos = 0;
    while (pos <= block_text.size()) {
      const std::size_t comma = std::min(block_text.find(',', pos), block_text.size());
      const std::string item(strip(block_text.substr(pos, comma - pos)));
      if (item.empty()) throw DomainError("empty element in partition text");
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw DomainError("bad element '" + item + "' in partition text");
      block.push_back(value);
      k = std::max(k, value);
      pos = comma + 1;
    }
    blocks.push_back(std::move(block));
    start = bar + 1;
  }
  return Partition(k, blocks);
}

std::vector<Partition::Block> Partition::blocks() const {
  std::vector<Block> out(block_count_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<int> Partition::block_sizes() const {
  std::vector<int> sizes(block_count_, 0);
  for (int label : labels_) ++sizes[label];
  return sizes;
}

bool Partition::is_pair_partition() const {
  const auto sizes = block_sizes();
  return std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 2; });
}

bool Partition::is_noncrossing() const {
  // a < b < c < d with a, c in one block and b, d in another is a crossing.
  const int k = ground_size();
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (labels_[b] == labels_[a]) continue;
      for (int c = b + 1; c < k; ++c) {
        if (labels_[c] != labels_[a]) continue;
        for (int d = c + 1; d < k; ++d) {
          if (labels_[d] == labels_[b]) return false;
        }
      }
    }
  }
  return true;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  out << '{';
  const auto bs = blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b) out << '|';
    for (std::size_t i = 0; i < bs[b].size(); ++i) {
      if (i) out << ',';
      out << bs[b][i];
    }
  }
  out << '}';
  return out.str();
}

void for_each_set_partition(int k, const std::function<void(const Partition&)>& visit) {
  check_enumeration_bound(k);
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<int> rgs(k, 0);
  std::vector<int> prefix_max(k, 0);
  while (true) {
    visit(Partition(rgs));
    int i = k - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < k; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<Partition> enumerate_set_partitions(int k) {
  std::vector<Partition> out;
  for_each_set_partition(k, [&](const Partition& p) { out.push_back(p); });
  return out;
}

bool is_special_symmetric(const Partition& p) {
  const auto& labels = p.labels();
  const int k = p.ground_size();
  for (int size : p.block_sizes()) {
    if (size % 2 != 0) return false;
  }
  std::vector<int> stack;
  for (int a = 0; a < k; ++a) {
    int b = a + 1;
    while (b < k && labels[b] != labels[a]) ++b;
    if (b >= k || b == a + 1) continue;
    stack.clear();
    for (int x = a + 1; x < b; ++x) {
      if (!stack.empty() && stack.back() == labels[x]) {
        stack.pop_back();
      } else {
        stack.push_back(labels[x]);
      }
    }
    if (!stack.empty()) return false;
  }
  return true;
}

std::vector<Partition> enumerate_ss(int k) {
  check_enumeration_bound(k);
  static std::mutex cache_mutex;
  static std::map<int, std::vector<Partition>> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  std::vector<Partition> out;
  if (k % 2 == 0) {
    for_each_set_partition(k, [&](const Partition& p) {
      if (is_special_symmetric(p)) out.push_back(p);
    });
  }
  std::lock_guard lock(cache_mutex);
  cache.emplace(k, out);
  return out;
}

std::vector<Partition> enumerate_nc2(int k) {
  std::vector<Partition> out;
  if (k % 2 != 0) {
    check_enumeration_bound(k);
    return out;
  }
  for (const auto& p : enumerate_ss(k)) {
    if (p.is_pair_partition() && p.is_noncrossing()) out.push_back(p);
  }
  return out;
}

Partition compose_gamma(const Partition& p) {
  const int k = p.ground_size();
  const auto pi = as_permutation(p);
  std::vector<int> product(k);
  for (int x = 0; x < k; ++x) product[x] = (pi[x] + 1) % k;
  return from_cycles(product);
}

Partition kreweras_complement(const Partition& p) {
  if (!p.is_pair_partition()) {
    throw DomainError("Kreweras complement needs a pair partition, got " + p.to_string());
  }
  if (!p.is_noncrossing()) {
    throw DomainError("Kreweras complement needs a non-crossing pair partition, got " + p.to_string());
  }
  // Primed point j' sits just before j. Arc {i, j} (i < j) encloses m' iff i < m <= j.
  const int k = p.ground_size();
  const auto arcs = p.blocks();
  std::vector<std::vector<bool>> inside(k, std::vector<bool>(arcs.size(), false));
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (int m = arcs[a][0] + 1; m <= arcs[a][1]; ++m) inside[m - 1][a] = true;
  }
  std::vector<int> labels(k);
  std::vector<std::vector<bool>> seen;
  for (int m = 0; m < k; ++m) {
    auto it = std::find(seen.begin(), seen.end(), inside[m]);
    if (it == seen.end()) {
      labels[m] = static_cast<int>(seen.size());
      seen.push_back(inside[m]);
    } else {
      labels[m] = static_cast<int>(it - seen.begin());
    }
  }
  return Partition::from_labels(labels);
}

bool PartitionGraph::has_self_loop() const noexcept {
  return std::any_of(edges.begin(), edges.end(), [](const GraphEdge& e) { return e.a == e.b; });
}

int PartitionGraph::walk_length() const noexcept {
  int total = 0;
  for (const auto& e : edges) total += e.multiplicity;
  return total;
}

std::vector<int> PartitionGraph::degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

PartitionGraph build_partition_graph(const Partition& p) {
  const Partition gp = compose_gamma(p);
  const auto& vertex_of = gp.labels();
  const int k = p.ground_size();
  std::map<std::pair<int, int>, int> counts;
  for (int step = 0; step < k; ++step) {
    int a = vertex_of[step];
    int b = vertex_of[(step + 1) % k];
    if (a > b) std::swap(a, b);
    ++counts[{a, b}];
  }
  PartitionGraph g;
  g.vertices = gp.blocks();
  g.root = vertex_of.empty() ? 0 : vertex_of[0];
  for (const auto& [edge, m] : counts) g.edges.push_back({edge.first, edge.second, m});
  return g;
}

PartitionGraph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  PartitionGraph g;
  for (int v = 0; v < vertex_count; ++v) g.vertices.push_back({v + 1});
  std::map<std::pair<int, int>, int> counts;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw DomainError("edge endpoint outside the vertex range");
    }
    if (a > b) std::swap(a, b);
    ++counts[{a, b}];
  }
  for (const auto& [edge, m] : counts) g.edges.push_back({edge.first, edge.second, m});
  return g;
}

bool is_tree(const PartitionGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  if (g.has_self_loop() || g.edge_count() + 1 != n) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& e : g.edges) {
    const auto ra = find(e.a), rb = find(e.b);
    if (ra == rb) return false;
    parent[ra] = rb;
    --components;
  }
  return components == 1;
}

}  // namespace ier
