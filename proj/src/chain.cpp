#include "treemix/chain.hpp"

#include <random>
#include <stdexcept>

namespace treemix {

namespace {

RationalKernel identity_kernel(const TreeTable& table) {
  RationalMatrix k = RationalMatrix::Zero(table.count(), table.count());
  for (Index i = 0; i < table.count(); ++i) k(i, i) = 1;
  return RationalKernel{table, table, std::move(k)};
}

void check_row_sums(const RationalKernel& kernel, const char* what) {
  for (Index i = 0; i < kernel.entries.rows(); ++i) {
    Rational sum = 0;
    for (Index j = 0; j < kernel.entries.cols(); ++j) sum += kernel.entries(i, j);
    if (sum != 1) throw std::logic_error(std::string(what) + ": row does not sum to 1");
  }
}

// Entry-wise conjugation of an integer count product into a stochastic
// kernel: K(i, j) = counts(i, j) * m(j) / (norm * m(i)).
RationalKernel conjugated_kernel(const CountMatrix& counts, const BigInt& norm,
                                 const char* what) {
  const std::vector<BigInt> m = m_values(counts.row_table);
  RationalMatrix k = RationalMatrix::Zero(counts.rows(), counts.cols());
  for (const auto& [key, value] : counts.entries) {
    k(key.first, key.second) = make_rational(value * m[static_cast<size_t>(key.second)],
                                             norm * m[static_cast<size_t>(key.first)]);
  }
  RationalKernel kernel{counts.row_table, counts.col_table, std::move(k)};
  check_row_sums(kernel, what);
  return kernel;
}

}  // namespace

std::vector<BigInt> m_values(const TreeTable& table) {
  std::vector<BigInt> out;
  out.reserve(static_cast<size_t>(table.count()));
  for (Index i = 0; i < table.count(); ++i) out.push_back(tree_stats(table.at(i)).m);
  return out;
}

Measure plancherel_measure(const TreeTable& table) {
  const int n = table.tree_size();
  if (n < 1) throw std::domain_error("plancherel_measure: tree size must be >= 1");
  BigInt z = 1;
  for (int i = 2; i <= n; ++i) z *= choose2(i);
  RationalVector probs(table.count());
  Rational total = 0;
  for (Index i = 0; i < table.count(); ++i) {
    const TreeStats st = tree_stats(table.at(i));
    const Rational p = make_rational(st.m * st.n_weight, z);
    BigInt hook_sq = 1;
    for (int h : st.subtree_sizes) hook_sq *= BigInt(h) * h;
    const Rational p2 = make_rational(BigInt(n) << (n - 1), st.sg_order * hook_sq);
    if (p != p2) throw std::logic_error("plancherel_measure: closed forms disagree");
    probs(i) = p;
    total += p;
  }
  if (total != 1) throw std::logic_error("plancherel_measure: measure does not sum to 1");
  return Measure{table, std::move(probs)};
}

Measure plancherel_measure(int n, int max_size) {
  return plancherel_measure(enumerate_trees(n, max_size));
}

RationalKernel up_kernel(const TreeTable& from, const TreeTable& to) {
  const int n = to.tree_size();
  if (from.tree_size() != n - 1 || n < 2) {
    throw std::invalid_argument("up_kernel: tables must hold sizes n-1 and n");
  }
  const std::vector<BigInt> m_from = m_values(from);
  const std::vector<BigInt> m_to = m_values(to);
  const BigInt norm = choose2(n);
  RationalMatrix k = RationalMatrix::Zero(from.count(), to.count());
  for (Index i = 0; i < from.count(); ++i) {
    for (const auto& [t, count] : grow(from.at(i))) {
      const Index j = to.index_of(t.encoding());
      k(i, j) = make_rational(count * m_to[static_cast<size_t>(j)],
                              norm * m_from[static_cast<size_t>(i)]);
    }
  }
  RationalKernel kernel{from, to, std::move(k)};
  check_row_sums(kernel, "up_kernel");
  return kernel;
}

RationalKernel up_kernel(int n, int max_size) {
  if (n < 2) throw std::domain_error("up_kernel: n must be >= 2");
  return up_kernel(enumerate_trees(n - 1, max_size), enumerate_trees(n, max_size));
}

RationalKernel down_kernel(const TreeTable& from, const TreeTable& to) {
  const int n = from.tree_size();
  if (to.tree_size() != n - 1 || n < 2) {
    throw std::invalid_argument("down_kernel: tables must hold sizes n and n-1");
  }
  const std::vector<BigInt> m_from = m_values(from);
  const std::vector<BigInt> m_to = m_values(to);
  RationalMatrix k = RationalMatrix::Zero(from.count(), to.count());
  for (Index i = 0; i < from.count(); ++i) {
    for (const auto& [t, count] : prune(from.at(i))) {
      const Index j = to.index_of(t.encoding());
      k(i, j) = make_rational(count * m_to[static_cast<size_t>(j)],
                              m_from[static_cast<size_t>(i)]);
    }
  }
  RationalKernel kernel{from, to, std::move(k)};
  check_row_sums(kernel, "down_kernel");
  return kernel;
}

RationalKernel down_kernel(int n, int max_size) {
  if (n < 2) throw std::domain_error("down_kernel: n must be >= 2");
  return down_kernel(enumerate_trees(n, max_size), enumerate_trees(n - 1, max_size));
}

RationalKernel down_up_kernel(int n, int max_size) {
  if (n < 1) throw std::domain_error("down_up_kernel: n must be >= 1");
  const TreeTable t_n = enumerate_trees(n, max_size);
  if (n == 1) return identity_kernel(t_n);
  const TreeTable t_down = enumerate_trees(n - 1, max_size);
  const RationalKernel d = down_kernel(t_n, t_down);
  const RationalKernel u = up_kernel(t_down, t_n);
  return RationalKernel{t_n, t_n, d.entries * u.entries};
}

RationalKernel down_up_conjugation(int n, int max_size) {
  if (n < 1) throw std::domain_error("down_up_conjugation: n must be >= 1");
  const TreeTable t_n = enumerate_trees(n, max_size);
  if (n == 1) return identity_kernel(t_n);
  const TreeTable t_down = enumerate_trees(n - 1, max_size);
  const CountMatrix pg =
      multiply(pruning_matrix(t_n, t_down), growth_matrix(t_down, t_n));
  return conjugated_kernel(pg, choose2(n), "down_up_conjugation");
}

RationalKernel up_down_kernel(int n, int max_size) {
  if (n < 1) throw std::domain_error("up_down_kernel: n must be >= 1");
  const TreeTable t_n = enumerate_trees(n, max_size);
  const TreeTable t_up = enumerate_trees(n + 1, max_size);
  const RationalKernel u = up_kernel(t_n, t_up);
  const RationalKernel d = down_kernel(t_up, t_n);
  return RationalKernel{t_n, t_n, u.entries * d.entries};
}

RationalKernel up_down_conjugation(int n, int max_size) {
  if (n < 1) throw std::domain_error("up_down_conjugation: n must be >= 1");
  const TreeTable t_n = enumerate_trees(n, max_size);
  const TreeTable t_up = enumerate_trees(n + 1, max_size);
  const CountMatrix gp = multiply(growth_matrix(t_n, t_up), pruning_matrix(t_up, t_n));
  return conjugated_kernel(gp, choose2(n + 1), "up_down_conjugation");
}

bool verify_reversibility(int n, int max_size) {
  const RationalKernel k = down_up_kernel(n, max_size);
  const Measure pi = plancherel_measure(k.row_table);
  for (Index i = 0; i < k.entries.rows(); ++i) {
    for (Index j = 0; j < i; ++j) {
      if (pi.probs(i) * k.entries(i, j) != pi.probs(j) * k.entries(j, i)) return false;
    }
  }
  return true;
}

TrajectorySample sample_trajectory(int n, long steps, const CanonicalTree& start,
                                   std::uint64_t seed, int max_size) {
  if (n < 1) throw std::domain_error("sample_trajectory: n must be >= 1");
  if (steps < 0) throw std::domain_error("sample_trajectory: steps must be >= 0");
  if (start.size() != n) {
    throw std::invalid_argument("sample_trajectory: start tree has the wrong size");
  }
  const TreeTable t_n = enumerate_trees(n, max_size);
  TrajectorySample out{n, seed, "mt19937_64", {}};
  out.states.reserve(static_cast<size_t>(steps) + 1);
  Index cur = t_n.index_of(start.encoding());
  out.states.push_back(cur);
  if (steps == 0) return out;
  if (n == 1) {
    // K_1 is the identity: the trajectory never leaves the single tree
    out.states.assign(static_cast<size_t>(steps) + 1, cur);
    return out;
  }
  const TreeTable t_down = enumerate_trees(n - 1, max_size);
  const RationalKernel d = down_kernel(t_n, t_down);
  const RationalKernel u = up_kernel(t_down, t_n);

  std::mt19937_64 rng(seed);
  const BigInt two64 = BigInt(1) << 64;
  const auto draw_row = [&](const RationalMatrix& mat, Index row) -> Index {
    // u = v/2^64 is uniform on {0, 1/2^64, ...}; the first column whose
    // cumulative row sum exceeds u is the exact inverse-CDF sample
    const Rational u_val = make_rational(BigInt(static_cast<unsigned long>(rng())), two64);
    Rational cum = 0;
    for (Index j = 0; j < mat.cols(); ++j) {
      cum += mat(row, j);
      if (u_val < cum) return j;
    }
    return mat.cols() - 1;  // unreachable: rows sum to exactly 1 > u
  };
  for (long s = 0; s < steps; ++s) {
    const Index mid = draw_row(d.entries, cur);
    cur = draw_row(u.entries, mid);
    out.states.push_back(cur);
  }
  return out;
}

}  // namespace treemix
