#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ier {

/// Largest ground set accepted by the enumerators (Bell(12) = 4213597).
inline constexpr int kMaxEnumeratedSize = 12;

/// A set partition of {1, ..., k}.
///
/// Stored as a restricted growth string: labels()[i] is the index of the block
/// holding element i + 1, with blocks numbered in order of their smallest
/// element. Two partitions compare equal iff they have the same blocks.
class Partition {
 public:
  using Block = std::vector<int>;

  Partition() = default;

  /// Builds a partition of {1..k} from blocks given in any order. Throws
  /// DomainError unless the blocks are disjoint, non-empty and cover {1..k}.
  Partition(int k, const std::vector<Block>& blocks);

  /// Builds a partition from arbitrary per-element labels (elements with equal
  /// labels share a block).
  static Partition from_labels(const std::vector<int>& labels);

  /// Parses block notation such as "{1,4,5,8|2,3,6,7}". The ground set size
  /// is the largest element.
  static Partition parse(std::string_view text);

  int ground_size() const noexcept { return static_cast<int>(labels_.size()); }
  std::size_t block_count() const noexcept { return block_count_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  /// Blocks ordered by smallest element, elements ascending.
  std::vector<Block> blocks() const;
  std::vector<int> block_sizes() const;

  bool is_pair_partition() const;
  bool is_noncrossing() const;

  /// Block notation, e.g. "{1,4,5,8|2,3,6,7}".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<int> canonical_labels);

  friend void for_each_set_partition(int k, const std::function<void(const Partition&)>& visit);

  std::vector<int> labels_;
  std::size_t block_count_ = 0;
};

/// Visits every set partition of {1..k} in lexicographic order of restricted
/// growth strings without materialising the whole list.
void for_each_set_partition(int k, const std::function<void(const Partition&)>& visit);

/// All Bell(k) set partitions in canonical order. Requires 1 <= k <= 12.
std::vector<Partition> enumerate_set_partitions(int k);

/// Even block sizes, and between any two successive elements a < b of a block
/// the elements strictly between them cancel completely when equal adjacent
/// block labels are removed in pairs (stack scan).
bool is_special_symmetric(const Partition& p);

/// Special Symmetric partitions of {1..k} in canonical order; empty for odd k.
std::vector<Partition> enumerate_ss(int k);

/// Non-crossing pair partitions of {1..k}; empty for odd k.
std::vector<Partition> enumerate_nc2(int k);

/// Reads each block as an ascending cycle and composes with the shift
/// gamma = (1 2 ... k), applying the partition first: x -> gamma(pi(x)).
/// The cycles of the product are returned as a partition.
Partition compose_gamma(const Partition& p);

/// Complement of a non-crossing pair partition: the coarsest partition of the
/// interleaved points 1',1,2',2,...,k',k restricted to the primed points such
/// that no arc of p separates two points of one block. Throws DomainError for
/// inputs that are not non-crossing pair partitions.
Partition kreweras_complement(const Partition& p);

struct GraphEdge {
  int a = 0;  // a <= b; a == b marks a self-loop
  int b = 0;
  int multiplicity = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Closed walk 1 -> 2 -> ... -> k -> 1 collapsed along the blocks of gamma pi.
/// Vertex i is the i-th block of compose_gamma(p) (canonical order), so the
/// root, the block containing 1, is always vertex 0.
struct PartitionGraph {
  std::vector<Partition::Block> vertices;
  int root = 0;
  std::vector<GraphEdge> edges;  // distinct edges sorted by (a, b)

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  bool has_self_loop() const noexcept;
  /// Sum of edge multiplicities; equals k for graphs built from partitions.
  int walk_length() const noexcept;
  /// Number of distinct non-loop edges incident to each vertex.
  std::vector<int> degrees() const;
};

PartitionGraph build_partition_graph(const Partition& p);

/// Builds a graph directly from an edge list (multiplicity 1 each); used for
/// densities of arbitrary small graphs.
PartitionGraph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);

/// Connected, loop free and |E| = |V| - 1.
bool is_tree(const PartitionGraph& g);

}  // namespace ier
