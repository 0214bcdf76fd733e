#include "treemix/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace treemix {

std::map<CanonicalTree, BigInt> grow(const CanonicalTree& t) {
  std::map<CanonicalTree, BigInt> out;
  const std::string& e = t.encoding();
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] != '(') continue;
    std::string next;
    next.reserve(e.size() + 2);
    next.append(e, 0, i + 1).append("()").append(e, i + 1, std::string::npos);
    out[CanonicalTree(canonical_form(next))] += 1;
  }
  return out;
}

std::map<CanonicalTree, BigInt> prune(const CanonicalTree& t) {
  std::map<CanonicalTree, BigInt> out;
  const std::string& e = t.encoding();
  // "()" starting anywhere but position 0 is a terminal non-root vertex
  for (size_t i = 1; i + 1 < e.size(); ++i) {
    if (e[i] != '(' || e[i + 1] != ')') continue;
    std::string next;
    next.reserve(e.size() - 2);
    next.append(e, 0, i).append(e, i + 2, std::string::npos);
    out[CanonicalTree(canonical_form(next))] += 1;
  }
  return out;
}

const BigInt& CountMatrix::at(Index i, Index j) const {
  static const BigInt zero(0);
  const auto it = entries.find({i, j});
  return it == entries.end() ? zero : it->second;
}

CountMatrix identity_count_matrix(const TreeTable& table) {
  CountMatrix m{table, table, {}};
  for (Index i = 0; i < table.count(); ++i) m.entries[{i, i}] = 1;
  return m;
}

CountMatrix multiply(const CountMatrix& a, const CountMatrix& b) {
  if (a.col_table.tree_size() != b.row_table.tree_size()) {
    throw std::invalid_argument("CountMatrix multiply: inner tree sizes differ");
  }
  // row-indexed view of b for the sparse row-by-row product
  std::vector<std::vector<std::pair<Index, const BigInt*>>> b_rows(
      static_cast<size_t>(b.rows()));
  for (const auto& [key, value] : b.entries) {
    b_rows[static_cast<size_t>(key.first)].emplace_back(key.second, &value);
  }
  CountMatrix out{a.row_table, b.col_table, {}};
  for (const auto& [key, value] : a.entries) {
    for (const auto& [j, bv] : b_rows[static_cast<size_t>(key.second)]) {
      out.entries[{key.first, j}] += value * *bv;
    }
  }
  return out;
}

CountMatrix growth_matrix(const TreeTable& from, const TreeTable& to) {
  if (to.tree_size() != from.tree_size() + 1) {
    throw std::invalid_argument("growth_matrix: target table must hold trees one vertex larger");
  }
  CountMatrix m{from, to, {}};
  for (Index i = 0; i < from.count(); ++i) {
    for (const auto& [t, count] : grow(from.at(i))) {
      m.entries[{i, to.index_of(t.encoding())}] = count;
    }
  }
  return m;
}

CountMatrix growth_matrix(int n, int max_size) {
  return growth_matrix(enumerate_trees(n, max_size), enumerate_trees(n + 1, max_size));
}

CountMatrix pruning_matrix(const TreeTable& from, const TreeTable& to) {
  if (to.tree_size() != from.tree_size() - 1) {
    throw std::invalid_argument("pruning_matrix: target table must hold trees one vertex smaller");
  }
  CountMatrix m{from, to, {}};
  for (Index i = 0; i < from.count(); ++i) {
    for (const auto& [t, count] : prune(from.at(i))) {
      m.entries[{i, to.index_of(t.encoding())}] = count;
    }
  }
  return m;
}

CountMatrix pruning_matrix(int n, int max_size) {
  if (n == 1) {
    // 1x0 edge case: the single-vertex tree has nothing to prune to
    return CountMatrix{enumerate_trees(1, max_size), TreeTable(0, {}), {}};
  }
  return pruning_matrix(enumerate_trees(n, max_size), enumerate_trees(n - 1, max_size));
}

KStepCounts k_step_counts(int n, int k, int max_size) {
  if (n < 1) throw std::domain_error("k_step_counts: n must be >= 1");
  if (k < 0) throw std::domain_error("k_step_counts: k out of range");
  const int lowest = std::max(n - k, 1);
  std::vector<TreeTable> tables;  // sizes lowest .. n+k
  tables.reserve(static_cast<size_t>(n + k - lowest + 1));
  for (int s = lowest; s <= n + k; ++s) tables.push_back(enumerate_trees(s, max_size));
  const auto table = [&](int size) -> const TreeTable& {
    return tables[static_cast<size_t>(size - lowest)];
  };
  CountMatrix g = identity_count_matrix(table(n));
  for (int s = n; s < n + k; ++s) g = multiply(g, growth_matrix(table(s), table(s + 1)));
  if (n - k < 1) {
    // the root can never be pruned, so beyond n - 1 steps the pruning power
    // is the zero map into the empty table
    CountMatrix p{table(n), TreeTable(0, {}), {}};
    return KStepCounts{std::move(g), std::move(p)};
  }
  CountMatrix p = identity_count_matrix(table(n));
  for (int s = n; s > n - k; --s) p = multiply(p, pruning_matrix(table(s), table(s - 1)));
  return KStepCounts{std::move(g), std::move(p)};
}

bool commutator_check(int n, int max_size) {
  if (n < 1) throw std::domain_error("commutator_check: n must be >= 1");
  const TreeTable t_n = enumerate_trees(n, max_size);
  const TreeTable t_up = enumerate_trees(n + 1, max_size);
  CountMatrix gp = multiply(growth_matrix(t_n, t_up), pruning_matrix(t_up, t_n));
  if (n >= 2) {
    const TreeTable t_down = enumerate_trees(n - 1, max_size);
    const CountMatrix pg = multiply(pruning_matrix(t_n, t_down), growth_matrix(t_down, t_n));
    for (const auto& [key, value] : pg.entries) gp.entries[{key.first, key.second}] -= value;
  }
  for (Index i = 0; i < t_n.count(); ++i) {
    for (Index j = 0; j < t_n.count(); ++j) {
      if (gp.at(i, j) != (i == j ? BigInt(n) : BigInt(0))) return false;
    }
  }
  return true;
}

}  // namespace treemix
