#pragma once

#include <map>
#include <utility>

#include "treemix/tree.hpp"

namespace treemix {

// Multiset of trees produced by attaching one new leaf to each vertex of t,
// keyed by canonical form.  Counts over all keys sum to |t|.
std::map<CanonicalTree, BigInt> grow(const CanonicalTree& t);

// Multiset of trees produced by deleting one terminal (non-root) vertex of t,
// keyed by canonical form.  Empty for the single-vertex tree.
std::map<CanonicalTree, BigInt> prune(const CanonicalTree& t);

// Sparse nonnegative integer matrix between two tree tables; rows are source
// trees.  Entries iterate in row-major order, so dumps and products are
// deterministic.
struct CountMatrix {
  TreeTable row_table;
  TreeTable col_table;
  std::map<std::pair<Index, Index>, BigInt> entries;

  Index rows() const noexcept { return row_table.count(); }
  Index cols() const noexcept { return col_table.count(); }

  // Entry (i, j), zero when absent.
  const BigInt& at(Index i, Index j) const;
};

// Identity over one table (used as the empty product of growth/pruning steps).
CountMatrix identity_count_matrix(const TreeTable& table);

// a * b over exact integers; a's column table and b's row table must hold
// trees of the same size.
CountMatrix multiply(const CountMatrix& a, const CountMatrix& b);

// Growth matrix from size n to n+1: entry (t, t') counts the vertices of t
// whose new leaf yields t'.  Row sums equal n.
CountMatrix growth_matrix(const TreeTable& from, const TreeTable& to);
CountMatrix growth_matrix(int n, int max_size = kMaxEnumerationSize);

// Pruning matrix from size n to n-1: entry (t, t') counts the terminal
// vertices of t whose deletion yields t'.  Row sums count terminal vertices;
// for n = 1 the matrix is 1x0.
CountMatrix pruning_matrix(const TreeTable& from, const TreeTable& to);
CountMatrix pruning_matrix(int n, int max_size = kMaxEnumerationSize);

// k-fold iterates starting at size n: G^k maps size n to n+k, P^k maps size
// n to n-k.  k = 0 yields identities.  The root is never prunable, so for
// k >= n the pruning power is the exact zero map, returned with an empty
// column table; the growth power only needs n + k within the enumeration
// bound.
struct KStepCounts {
  CountMatrix growth;   // size n -> n+k
  CountMatrix pruning;  // size n -> n-k
};
KStepCounts k_step_counts(int n, int k, int max_size = kMaxEnumerationSize);

// Checks the commutation identity at size n: G_n P_{n+1} - P_n G_{n-1} equals
// n times the identity on size-n trees (the second product is absent for
// n = 1).
bool commutator_check(int n, int max_size = kMaxEnumerationSize);

}  // namespace treemix
