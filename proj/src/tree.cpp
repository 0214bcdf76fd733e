#include "treemix/tree.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treemix {

namespace {

// Top-level child encodings of the strict inside of a vertex.  Rejects any
// character other than parentheses and any imbalance.
std::vector<std::string_view> split_children(std::string_view inner) {
  std::vector<std::string_view> kids;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (c == '(') {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == ')') {
      --depth;
      if (depth < 0) throw std::invalid_argument("tree encoding: unbalanced parentheses");
      if (depth == 0) kids.push_back(inner.substr(start, i + 1 - start));
    } else {
      throw std::invalid_argument("tree encoding: unexpected character");
    }
  }
  if (depth != 0) throw std::invalid_argument("tree encoding: unbalanced parentheses");
  return kids;
}

BigInt symmetry_order_rec(std::string_view enc) {
  auto kids = split_children(enc.substr(1, enc.size() - 2));
  BigInt order = 1;
  size_t i = 0;
  while (i < kids.size()) {
    size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) ++j;
    // children are sorted, so isomorphic subtrees sit in runs: each run of
    // length k contributes k! root-level swaps times the k inner groups
    const BigInt inner = symmetry_order_rec(kids[i]);
    BigInt inner_pow;
    mpz_pow_ui(inner_pow.get_mpz_t(), inner.get_mpz_t(), j - i);
    order *= inner_pow * factorial(j - i);
    i = j;
  }
  return order;
}

}  // namespace

std::string canonical_form(std::string_view encoding) {
  if (encoding.size() < 2 || encoding.size() % 2 != 0 || encoding.front() != '(' ||
      encoding.back() != ')') {
    throw std::invalid_argument("tree encoding: not a single balanced tree");
  }
  auto kids = split_children(encoding.substr(1, encoding.size() - 2));
  std::vector<std::string> parts;
  parts.reserve(kids.size());
  for (std::string_view k : kids) parts.push_back(canonical_form(k));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const std::string& p : parts) out += p;
  out += ')';
  return out;
}

CanonicalTree::CanonicalTree(std::string encoding) : encoding_(std::move(encoding)) {
  if (canonical_form(encoding_) != encoding_) {
    throw std::invalid_argument("CanonicalTree: children not in canonical order: " + encoding_);
  }
}

CanonicalTree CanonicalTree::path(int n) {
  if (n < 1) throw std::domain_error("CanonicalTree::path: n must be >= 1");
  std::string e(static_cast<size_t>(n), '(');
  e.append(static_cast<size_t>(n), ')');
  return CanonicalTree(std::move(e));
}

CanonicalTree CanonicalTree::star(int n) {
  if (n < 1) throw std::domain_error("CanonicalTree::star: n must be >= 1");
  std::string e = "(";
  for (int i = 1; i < n; ++i) e += "()";
  e += ')';
  return CanonicalTree(std::move(e));
}

CanonicalTree canonicalize(std::span<const int> parents) {
  const int n = static_cast<int>(parents.size());
  if (n == 0) throw std::invalid_argument("canonicalize: empty parent array");
  int root = -1;
  std::vector<std::vector<int>> children(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int p = parents[static_cast<size_t>(v)];
    if (p == -1) {
      if (root != -1) throw std::invalid_argument("canonicalize: multiple roots");
      root = v;
    } else if (p < 0 || p >= n) {
      throw std::invalid_argument("canonicalize: parent index out of range");
    } else {
      children[static_cast<size_t>(p)].push_back(v);
    }
  }
  if (root == -1) throw std::invalid_argument("canonicalize: no root marked");

  int visited = 0;
  auto encode = [&](auto&& self, int v) -> std::string {
    ++visited;
    std::vector<std::string> parts;
    parts.reserve(children[static_cast<size_t>(v)].size());
    for (int c : children[static_cast<size_t>(v)]) parts.push_back(self(self, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const std::string& p : parts) out += p;
    out += ')';
    return out;
  };
  std::string enc = encode(encode, root);
  // a cycle in the parent array is unreachable from the root, so it surfaces
  // as unvisited vertices (that also covers forests with a cyclic component)
  if (visited != n) throw std::invalid_argument("canonicalize: parent array contains a cycle");
  return CanonicalTree(std::move(enc));
}

std::vector<int> to_parent_list(const CanonicalTree& t) {
  std::vector<int> parents;
  parents.reserve(static_cast<size_t>(t.size()));
  std::vector<int> stack;
  for (char c : t.encoding()) {
    if (c == '(') {
      const int id = static_cast<int>(parents.size());
      parents.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(id);
    } else {
      stack.pop_back();
    }
  }
  return parents;
}

TreeTable::TreeTable(int n, std::vector<CanonicalTree> sorted_trees)
    : n_(n), trees_(std::move(sorted_trees)) {
  if (n_ < 0) throw std::domain_error("TreeTable: tree size must be >= 0");
  index_.reserve(trees_.size());
  for (Index i = 0; i < count(); ++i) {
    const CanonicalTree& t = trees_[static_cast<size_t>(i)];
    if (t.size() != n_) throw std::invalid_argument("TreeTable: tree of wrong size");
    if (i > 0 && !(trees_[static_cast<size_t>(i - 1)] < t)) {
      throw std::invalid_argument("TreeTable: trees not strictly ascending");
    }
    index_.emplace(t.encoding(), i);
  }
}

Index TreeTable::index_of(std::string_view encoding) const {
  const auto it = index_.find(std::string(encoding));
  if (it == index_.end()) {
    throw std::out_of_range("TreeTable: encoding not in table: " + std::string(encoding));
  }
  return it->second;
}

TreeTable enumerate_trees(int n, int max_size) {
  if (n < 1) throw std::domain_error("enumerate_trees: n must be >= 1");
  if (n > max_size) {
    throw ResourceLimitError("enumerate_trees: n=" + std::to_string(n) +
                             " exceeds the enumeration bound " + std::to_string(max_size));
  }
  std::vector<std::string> level = {"()"};
  for (int m = 2; m <= n; ++m) {
    std::set<std::string> grown;
    for (const std::string& e : level) {
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] != '(') continue;
        std::string next;
        next.reserve(e.size() + 2);
        next.append(e, 0, i + 1).append("()").append(e, i + 1, std::string::npos);
        grown.insert(canonical_form(next));
      }
    }
    level.assign(grown.begin(), grown.end());
  }
  std::vector<CanonicalTree> trees;
  trees.reserve(level.size());
  for (std::string& e : level) trees.emplace_back(std::move(e));
  return TreeTable(n, std::move(trees));
}

BigInt count_trees(int n) {
  if (n < 1) throw std::domain_error("count_trees: n must be >= 1");
  // f carries coefficients 0..n-1 of prod_{m < current} (1 - x^m)^{-T_m};
  // the generating function has a leading factor x, so T_m is read off as
  // the coefficient of x^{m-1} once all factors below m are folded in.
  std::vector<BigInt> f(static_cast<size_t>(n), BigInt(0));
  f[0] = 1;
  BigInt t_m = 1;
  for (int m = 1; m <= n; ++m) {
    t_m = f[static_cast<size_t>(m - 1)];
    if (m == n || t_m == 0) continue;
    // fold (1 - x^m)^{-T_m} = sum_j C(T_m + j - 1, j) x^{mj}
    const int jmax = (n - 1) / m;
    std::vector<BigInt> binoms(static_cast<size_t>(jmax) + 1);
    binoms[0] = 1;
    for (int j = 1; j <= jmax; ++j) {
      binoms[static_cast<size_t>(j)] = exact_div(
          binoms[static_cast<size_t>(j - 1)] * (t_m + (j - 1)), BigInt(j), "binomial recursion");
    }
    std::vector<BigInt> g(static_cast<size_t>(n), BigInt(0));
    for (int d = 0; d < n; ++d) {
      BigInt acc = 0;
      for (int j = 0; j * m <= d; ++j) {
        acc += binoms[static_cast<size_t>(j)] * f[static_cast<size_t>(d - j * m)];
      }
      g[static_cast<size_t>(d)] = std::move(acc);
    }
    f = std::move(g);
  }
  return t_m;
}

TreeStats tree_stats(const CanonicalTree& t) {
  const std::string& e = t.encoding();
  const int n = t.size();
  std::vector<int> h;
  h.reserve(static_cast<size_t>(n));
  std::vector<size_t> stack;
  for (char c : e) {
    if (c == '(') {
      stack.push_back(h.size());
      h.push_back(0);
    } else {
      const size_t i = stack.back();
      stack.pop_back();
      h[i] += 1;  // close the vertex: its own count joins the children's
      if (!stack.empty()) h[stack.back()] += h[i];
    }
  }
  BigInt hook = 1;
  for (int v : h) hook *= v;
  BigInt m = exact_div(factorial(static_cast<unsigned long>(n)), hook,
                       "n! not divisible by the subtree-size product");
  BigInt sg = symmetry_order_rec(e);
  BigInt n_weight = exact_div(m, sg, "m not divisible by the symmetry order");
  return TreeStats{std::move(m), std::move(n_weight), std::move(sg), std::move(h)};
}

}  // namespace treemix
