#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treemix/rational.hpp"

namespace treemix {

// Enumeration beyond this size is refused by default (tables get large and
// every dense-kernel routine sits far below it anyway).  Callers may pass an
// explicit higher bound; the CLI does so when TREEMIX_MAX_N is set.
inline constexpr int kMaxEnumerationSize = 14;

// Rewrites a balanced-parenthesis encoding into canonical form: at every
// vertex the child encodings are sorted ascending byte-wise.  Throws
// std::invalid_argument if the string is not a single balanced tree.
std::string canonical_form(std::string_view encoding);

// A rooted unlabeled tree, represented by its canonical balanced-parenthesis
// encoding.  Equality of encodings is isomorphism of trees, so the string is
// the identity and the only state.
class CanonicalTree {
 public:
  // Validates: balanced, single root, children canonically ordered at every
  // vertex.  Throws std::invalid_argument otherwise.  Use canonical_form()
  // first to accept arbitrary child orders.
  explicit CanonicalTree(std::string encoding);

  const std::string& encoding() const noexcept { return encoding_; }
  int size() const noexcept { return static_cast<int>(encoding_.size()) / 2; }

  // The path with n vertices: (((...))).
  static CanonicalTree path(int n);
  // The star with n vertices: root with n-1 leaf children.
  static CanonicalTree star(int n);

  friend bool operator==(const CanonicalTree&, const CanonicalTree&) = default;
  friend auto operator<=>(const CanonicalTree&, const CanonicalTree&) = default;

 private:
  std::string encoding_;
};

// Builds the canonical tree for a parent array: parents[i] is the index of
// vertex i's parent, with the unique root marked by -1.  Throws
// std::invalid_argument on an empty array, out-of-range indices, zero or
// multiple roots, or cycles (equivalently, forests).
CanonicalTree canonicalize(std::span<const int> parents);

// Inverse convenience: a parent array realizing t, vertices in preorder of
// the canonical encoding (root first, parent -1).
std::vector<int> to_parent_list(const CanonicalTree& t);

// All trees of one size, sorted ascending by encoding.  Positions in this
// table index every matrix and measure in the library.  A size-0 table is
// legal and empty (it appears as the column table of the 1x0 pruning matrix).
class TreeTable {
 public:
  TreeTable(int n, std::vector<CanonicalTree> sorted_trees);

  int tree_size() const noexcept { return n_; }
  Index count() const noexcept { return static_cast<Index>(trees_.size()); }
  const CanonicalTree& at(Index i) const { return trees_.at(static_cast<size_t>(i)); }
  const std::vector<CanonicalTree>& trees() const noexcept { return trees_; }

  // Position of an encoding in the table; throws std::out_of_range if the
  // encoding is not a canonical tree of this size.
  Index index_of(std::string_view encoding) const;

 private:
  int n_;
  std::vector<CanonicalTree> trees_;
  std::unordered_map<std::string, Index> index_;
};

// Exhaustively enumerates all rooted unlabeled trees with n vertices by
// growing the size-(n-1) table vertex-by-vertex and deduplicating canonical
// encodings.  Throws std::domain_error for n < 1 and ResourceLimitError for
// n > max_size.
TreeTable enumerate_trees(int n, int max_size = kMaxEnumerationSize);

// Number of rooted unlabeled trees with n vertices, via the Euler-product
// recursion on the generating function — no enumeration involved, so this is
// an independent cross-check on table sizes and stays cheap far beyond the
// enumeration bound.
BigInt count_trees(int n);

struct TreeStats {
  BigInt m;                        // labeled-growth count n!/prod h(v)
  BigInt n_weight;                 // m / |symmetry group|
  BigInt sg_order;                 // order of the root-preserving automorphism group
  std::vector<int> subtree_sizes;  // h(v) in preorder of the encoding
};

// Combinatorial weights of one tree.  m counts the vertex-addition orders
// that build t (equivalently n!/prod of subtree sizes), sg_order the
// root-preserving automorphisms, and n_weight = m/sg_order counts growth
// sequences of distinct labeled representatives.
TreeStats tree_stats(const CanonicalTree& t);

}  // namespace treemix
