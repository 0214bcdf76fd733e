#include "treemix/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace treemix {

SizeCaps caps_from_env() {
  SizeCaps caps;
  if (const char* env = std::getenv("TREEMIX_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      const int n = static_cast<int>(std::min(v, 1000L));
      caps.kernel = std::max(caps.kernel, n);
      caps.enumeration = std::max(caps.enumeration, n);
      caps.count = std::max(caps.count, n);
    }
  }
  return caps;
}

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::kEnumerate: return "enumerate";
    case Command::kStats: return "stats";
    case Command::kMeasure: return "measure";
    case Command::kKernel: return "kernel";
    case Command::kSpectrum: return "spectrum";
    case Command::kSeparation: return "separation";
    case Command::kLimit: return "limit";
    case Command::kSample: return "sample";
    case Command::kVerify: return "verify";
  }
  return "unknown";
}

const char* route_choice_name(RouteChoice r) {
  switch (r) {
    case RouteChoice::kEigen: return "eigen";
    case RouteChoice::kRecurrence: return "recurrence";
    case RouteChoice::kBruteforce: return "bruteforce";
    case RouteChoice::kAll: return "all";
  }
  return "unknown";
}

const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::kDownUp: return "downup";
    case KernelKind::kUpDown: return "updown";
    case KernelKind::kUp: return "up";
    case KernelKind::kDown: return "down";
  }
  return "unknown";
}

void require_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw ResourceLimitError(std::string(what) + ": n=" + std::to_string(n) +
                             " exceeds the size cap " + std::to_string(cap) +
                             " (set TREEMIX_MAX_N to raise it)");
  }
}

nlohmann::json config_json(const RunConfig& cfg) {
  return {{"command", command_name(cfg.command)},
          {"n", cfg.n},
          {"r_max", cfg.r_max},
          {"c", cfg.c},
          {"tol", cfg.tol},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"route", route_choice_name(cfg.route)},
          {"kind", kernel_kind_name(cfg.kind)},
          {"start", cfg.start},
          {"format", cfg.format == OutputFormat::kJson ? "json" : "csv"}};
}

void emit_json(std::ostream& os, const RunConfig& cfg, nlohmann::json data) {
  const nlohmann::json out = {{"meta",
                               {{"command", command_name(cfg.command)},
                                {"version", std::string(kVersion)},
                                {"config", config_json(cfg)}}},
                              {"data", std::move(data)}};
  os << out.dump(2) << "\n";
}

int dispatch(const RunConfig& cfg, std::ostream& os) {
  const bool json = cfg.format == OutputFormat::kJson;
  switch (cfg.command) {
    case Command::kEnumerate: {
      require_cap(cfg.n, cfg.caps.enumeration, "enumerate");
      const TreeTable t = enumerate_trees(cfg.n, cfg.caps.enumeration);
      if (json) emit_json(os, cfg, table_to_json(t));
      else write_table(os, t);
      return 0;
    }
    case Command::kStats: {
      require_cap(cfg.n, cfg.caps.enumeration, "stats");
      const TreeTable t = enumerate_trees(cfg.n, cfg.caps.enumeration);
      if (json) emit_json(os, cfg, stats_to_json(t));
      else write_stats_csv(os, t);
      return 0;
    }
    case Command::kMeasure: {
      require_cap(cfg.n, cfg.caps.kernel, "measure");
      const Measure mu = plancherel_measure(cfg.n, cfg.caps.enumeration);
      if (json) emit_json(os, cfg, measure_to_json(mu));
      else write_measure_csv(os, mu);
      return 0;
    }
    case Command::kKernel: {
      require_cap(cfg.n, cfg.caps.kernel, "kernel");
      RationalKernel k = [&] {
        switch (cfg.kind) {
          case KernelKind::kUpDown: return up_down_kernel(cfg.n, cfg.caps.enumeration);
          case KernelKind::kUp: return up_kernel(cfg.n, cfg.caps.enumeration);
          case KernelKind::kDown: return down_kernel(cfg.n, cfg.caps.enumeration);
          case KernelKind::kDownUp: break;
        }
        return down_up_kernel(cfg.n, cfg.caps.enumeration);
      }();
      if (json) emit_json(os, cfg, kernel_to_json(k));
      else write_kernel_csv(os, k);
      return 0;
    }
    case Command::kSpectrum: {
      require_cap(cfg.n, cfg.caps.count, "spectrum");
      const Spectrum s = down_up_spectrum(cfg.n);
      if (json) emit_json(os, cfg, spectrum_to_json(s));
      else write_spectrum_csv(os, s);
      return 0;
    }
    case Command::kSeparation: {
      std::vector<SeparationCurve> curves;
      switch (cfg.route) {
        case RouteChoice::kEigen:
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kEigenFormula));
          break;
        case RouteChoice::kRecurrence:
          require_cap(cfg.n, cfg.caps.count, "separation --route recurrence");
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kARecurrence));
          break;
        case RouteChoice::kBruteforce:
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kMatrixPower));
          break;
        case RouteChoice::kAll:
          if (cfg.n > kBruteforceCap) {
            throw ResourceLimitError(
                "separation --route all includes the matrix-power route, capped at n=" +
                std::to_string(kBruteforceCap) + "; use --route eigen or recurrence");
          }
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kEigenFormula));
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kARecurrence));
          curves.push_back(separation_curve(cfg.n, cfg.r_max, SeparationRoute::kMatrixPower));
          break;
      }
      if (json) emit_json(os, cfg, curves_to_json(curves));
      else write_curves_csv(os, curves);
      return 0;
    }
    case Command::kLimit: {
      const LimitSeries ls = limit_value(cfg.c, cfg.tol);
      if (json) emit_json(os, cfg, limit_to_json(ls));
      else write_limit_csv(os, ls);
      return 0;
    }
    case Command::kSample: {
      require_cap(cfg.n, cfg.caps.kernel, "sample");
      const CanonicalTree start = cfg.start.empty()
                                      ? CanonicalTree::path(cfg.n)
                                      : CanonicalTree(canonical_form(cfg.start));
      const TrajectorySample traj =
          sample_trajectory(cfg.n, cfg.samples, start, cfg.seed, cfg.caps.enumeration);
      const TreeTable t = enumerate_trees(cfg.n, cfg.caps.enumeration);
      if (json) emit_json(os, cfg, trajectory_to_json(traj, t));
      else write_trajectory_csv(os, traj, t);
      return 0;
    }
    case Command::kVerify: {
      return run_verify(cfg.caps.verify_kernel, cfg.caps.verify_count, os) ? 0 : 1;
    }
  }
  throw std::invalid_argument("unknown command");
}

bool rational_matrices_equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buf;
    const int rc = dispatch(cfg, buf);
    if (!cfg.output_path.empty()) {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open output path: " + cfg.output_path);
      f << buf.str();
    } else {
      out << buf.str();
    }
    return rc;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

bool run_verify(int kernel_cap, int count_cap, std::ostream& out) {
  const auto start_time = std::chrono::steady_clock::now();
  using Fail = std::optional<std::string>;
  const int kc = kernel_cap;
  const int cc = count_cap;
  const int enum_bound = std::max({kc + 1, cc, kMaxEnumerationSize});

  bool all_ok = true;
  const auto report = [&](const char* name, const Fail& fail) -> bool {
    if (fail) {
      out << "[FAIL] " << name << ": " << *fail << "\n";
      all_ok = false;
      return false;
    }
    out << "[ok] " << name << "\n";
    return true;
  };
  const auto guarded = [&](auto&& fn) -> Fail {
    try {
      return fn();
    } catch (const std::exception& e) {
      return std::string("exception: ") + e.what();
    }
  };

  // shared tables, built once up to the largest size any check touches
  std::vector<TreeTable> tables;
  for (int n = 1; n <= std::max(cc, kc + 1); ++n) tables.push_back(enumerate_trees(n, enum_bound));
  const auto table = [&](int n) -> const TreeTable& {
    return tables[static_cast<size_t>(n - 1)];
  };

  const auto check_counts = [&]() -> Fail {
    for (int n = 1; n <= cc; ++n) {
      if (BigInt(static_cast<long>(table(n).count())) != count_trees(n)) {
        return "n=" + std::to_string(n) + ": enumerated " + std::to_string(table(n).count()) +
               " trees but the recursion gives " + count_trees(n).get_str();
      }
    }
    return std::nullopt;
  };
  if (!report("tree counts: enumeration matches the generating-function recursion", guarded(check_counts))) return false;

  const auto check_stats = [&]() -> Fail {
    for (int n = 1; n <= cc; ++n) {
      const BigInt n_fact = factorial(static_cast<unsigned long>(n));
      BigInt z = 1;
      for (int i = 2; i <= n; ++i) z *= choose2(i);
      BigInt total = 0;
      for (Index i = 0; i < table(n).count(); ++i) {
        const CanonicalTree& t = table(n).at(i);
        const TreeStats st = tree_stats(t);
        BigInt hook = 1;
        for (int h : st.subtree_sizes) hook *= h;
        if (st.m * hook != n_fact) return "hook identity fails at " + t.encoding();
        if (st.n_weight * st.sg_order != st.m) return "m = n*sg fails at " + t.encoding();
        total += st.m * st.n_weight;
      }
      if (total != z) return "sum of m*n over size " + std::to_string(n) + " is not prod C(i,2)";
    }
    return std::nullopt;
  };
  if (!report("tree statistics: hook identity, m = n*|SG|, normalization", guarded(check_stats))) return false;

  const auto check_row_sums = [&]() -> Fail {
    for (int n = 1; n <= std::min(cc, 10); ++n) {
      const CountMatrix g = growth_matrix(table(n), enumerate_trees(n + 1, enum_bound));
      std::vector<BigInt> row_sum(static_cast<size_t>(g.rows()), BigInt(0));
      for (const auto& [key, value] : g.entries) row_sum[static_cast<size_t>(key.first)] += value;
      for (Index i = 0; i < g.rows(); ++i) {
        if (row_sum[static_cast<size_t>(i)] != n) {
          return "growth row sum at " + table(n).at(i).encoding() + " is not n";
        }
      }
      if (n >= 2) {
        const CountMatrix p = pruning_matrix(table(n), table(n - 1));
        std::vector<BigInt> prow(static_cast<size_t>(p.rows()), BigInt(0));
        for (const auto& [key, value] : p.entries) prow[static_cast<size_t>(key.first)] += value;
        for (Index i = 0; i < p.rows(); ++i) {
          const std::string& e = table(n).at(i).encoding();
          long terminals = 0;
          for (size_t pos = 1; pos + 1 < e.size(); ++pos) {
            if (e[pos] == '(' && e[pos + 1] == ')') ++terminals;
          }
          if (prow[static_cast<size_t>(i)] != terminals) {
            return "pruning row sum at " + e + " does not count terminal vertices";
          }
        }
      }
    }
    return std::nullopt;
  };
  if (!report("operators: growth rows sum to n, pruning rows count terminal vertices", guarded(check_row_sums))) return false;

  const auto check_commutator = [&]() -> Fail {
    for (int n = 1; n <= 10; ++n) {
      if (!commutator_check(n)) return "GP - PG != nI at n=" + std::to_string(n);
    }
    return std::nullopt;
  };
  if (!report("operators: commutation identity G P - P G = n I for n <= 10", guarded(check_commutator))) return false;

  const auto check_duality = [&]() -> Fail {
    for (int n = 2; n <= std::min(cc, 9); ++n) {
      std::vector<std::vector<BigInt>> sg(static_cast<size_t>(n) + 1);
      for (int j = 1; j <= n; ++j) {
        for (Index i = 0; i < table(j).count(); ++i) {
          sg[static_cast<size_t>(j)].push_back(tree_stats(table(j).at(i)).sg_order);
        }
      }
      for (int j = 1; j < n; ++j) {
        CountMatrix gk = identity_count_matrix(table(j));
        for (int s = j; s < n; ++s) gk = multiply(gk, growth_matrix(table(s), table(s + 1)));
        CountMatrix pk = identity_count_matrix(table(n));
        for (int s = n; s > j; --s) pk = multiply(pk, pruning_matrix(table(s), table(s - 1)));
        for (const auto& [key, value] : gk.entries) {
          const auto& [si, ti] = key;
          if (value * sg[static_cast<size_t>(n)][static_cast<size_t>(ti)] !=
              pk.at(ti, si) * sg[static_cast<size_t>(j)][static_cast<size_t>(si)]) {
            return "n(s,t)|SG(t)| != m(s,t)|SG(s)| at s=" + table(j).at(si).encoding() +
                   " t=" + table(n).at(ti).encoding();
          }
        }
        for (const auto& [key, value] : pk.entries) {
          if (gk.at(key.second, key.first) == 0 && value != 0) {
            return "pruning path count without matching growth path count at t=" +
                   table(n).at(key.first).encoding();
          }
        }
      }
    }
    return std::nullopt;
  };
  if (!report("operators: k-step growth/pruning duality n(s,t)|SG(t)| = m(s,t)|SG(s)|", guarded(check_duality))) return false;

  const auto check_measure = [&]() -> Fail {
    for (int n = 1; n <= cc; ++n) {
      plancherel_measure(table(n));  // throws if the two closed forms disagree
    }
    return std::nullopt;
  };
  if (!report("measure: both closed forms agree and sum to 1", guarded(check_measure))) return false;

  const auto check_intertwining = [&]() -> Fail {
    for (int n = 2; n <= kc; ++n) {
      const Measure pi_lo = plancherel_measure(table(n - 1));
      const Measure pi_hi = plancherel_measure(table(n));
      const RationalKernel u = up_kernel(table(n - 1), table(n));
      const RationalKernel d = down_kernel(table(n), table(n - 1));
      for (Index j = 0; j < table(n).count(); ++j) {
        Rational s = 0;
        for (Index i = 0; i < table(n - 1).count(); ++i) s += pi_lo.probs(i) * u.entries(i, j);
        if (s != pi_hi.probs(j)) return "pi U != pi at n=" + std::to_string(n);
      }
      for (Index j = 0; j < table(n - 1).count(); ++j) {
        Rational s = 0;
        for (Index i = 0; i < table(n).count(); ++i) s += pi_hi.probs(i) * d.entries(i, j);
        if (s != pi_lo.probs(j)) return "pi D != pi at n=" + std::to_string(n);
      }
    }
    return std::nullopt;
  };
  if (!report("chain: growth and pruning steps intertwine the stationary measures", guarded(check_intertwining))) return false;

  const auto check_up_dual_forms = [&]() -> Fail {
    for (int n = 2; n <= kc; ++n) {
      const RationalKernel u = up_kernel(table(n - 1), table(n));
      std::vector<BigInt> nw_lo, nw_hi;
      for (Index i = 0; i < table(n - 1).count(); ++i) {
        nw_lo.push_back(tree_stats(table(n - 1).at(i)).n_weight);
      }
      for (Index j = 0; j < table(n).count(); ++j) {
        nw_hi.push_back(tree_stats(table(n).at(j)).n_weight);
      }
      RationalMatrix alt = RationalMatrix::Zero(u.entries.rows(), u.entries.cols());
      const BigInt norm = choose2(n);
      for (Index j = 0; j < table(n).count(); ++j) {
        for (const auto& [t, count] : prune(table(n).at(j))) {
          const Index i = table(n - 1).index_of(t.encoding());
          alt(i, j) = make_rational(count * nw_hi[static_cast<size_t>(j)],
                                    norm * nw_lo[static_cast<size_t>(i)]);
        }
      }
      if (!rational_matrices_equal(u.entries, alt)) {
        return "the two displayed forms of the up kernel differ at n=" + std::to_string(n);
      }
    }
    return std::nullopt;
  };
  if (!report("chain: both displayed forms of the up kernel agree", guarded(check_up_dual_forms))) return false;

  const auto check_construction = [&]() -> Fail {
    for (int n = 1; n <= kc; ++n) {
      if (!rational_matrices_equal(down_up_kernel(n, enum_bound).entries,
                                   down_up_conjugation(n, enum_bound).entries)) {
        return "down-up composition differs from the conjugation route at n=" + std::to_string(n);
      }
      if (!rational_matrices_equal(up_down_kernel(n, enum_bound).entries,
                                   up_down_conjugation(n, enum_bound).entries)) {
        return "up-down composition differs from the conjugation route at n=" + std::to_string(n);
      }
    }
    return std::nullopt;
  };
  if (!report("chain: composed and conjugated kernel constructions agree", guarded(check_construction))) return false;

  const auto check_reversibility = [&]() -> Fail {
    for (int n = 2; n <= kc; ++n) {
      if (!verify_reversibility(n, enum_bound)) return "detailed balance fails at n=" + std::to_string(n);
      const RationalKernel k = down_up_kernel(n, enum_bound);
      const Measure pi = plancherel_measure(k.row_table);
      for (Index j = 0; j < k.entries.cols(); ++j) {
        Rational s = 0;
        for (Index i = 0; i < k.entries.rows(); ++i) s += pi.probs(i) * k.entries(i, j);
        if (s != pi.probs(j)) return "pi K != pi at n=" + std::to_string(n);
      }
    }
    return std::nullopt;
  };
  if (!report("chain: down-up kernel is reversible and stationary for the measure", guarded(check_reversibility))) return false;

  const auto check_traces = [&]() -> Fail {
    for (int n = 2; n <= kc; ++n) {
      const RationalKernel k = down_up_kernel(n, enum_bound);
      const Spectrum spec = down_up_spectrum(n);
      RationalMatrix power = k.entries;
      for (int p = 1; p <= 4; ++p) {
        Rational tr = 0;
        for (Index i = 0; i < power.rows(); ++i) tr += power(i, i);
        Rational expected = 0;
        for (const auto& [lam, mult] : spec.eigenvalues) {
          expected += Rational(mult) * rational_pow(lam, static_cast<unsigned long>(p));
        }
        if (tr != expected) {
          return "trace(K^" + std::to_string(p) + ") mismatch at n=" + std::to_string(n);
        }
        if (p < 4) power = (power * k.entries).eval();
      }
    }
    return std::nullopt;
  };
  if (!report("spectral: closed-form spectrum matches trace(K^p) for p = 1..4", guarded(check_traces))) return false;

  const auto check_annihilation = [&]() -> Fail {
    for (int n = 2; n <= std::min(kc, 7); ++n) {
      const RationalKernel k = down_up_kernel(n, enum_bound);
      const Spectrum spec = down_up_spectrum(n);
      RationalMatrix acc = RationalMatrix::Zero(k.entries.rows(), k.entries.cols());
      for (Index i = 0; i < acc.rows(); ++i) acc(i, i) = 1;
      for (const auto& [lam, mult] : spec.eigenvalues) {
        RationalMatrix factor = k.entries;
        for (Index i = 0; i < factor.rows(); ++i) factor(i, i) -= lam;
        acc = (acc * factor).eval();
      }
      for (Index i = 0; i < acc.rows(); ++i) {
        for (Index j = 0; j < acc.cols(); ++j) {
          if (acc(i, j) != 0) return "prod (K - lambda I) != 0 at n=" + std::to_string(n);
        }
      }
    }
    return std::nullopt;
  };
  if (!report("spectral: the distinct eigenvalues annihilate the kernel", guarded(check_annihilation))) return false;

  const auto check_separation_routes = [&]() -> Fail {
    for (int n = 2; n <= std::min(kc, 7); ++n) {
      const long r_max = 12;
      const SeparationCurve brute = separation_curve(n, r_max, SeparationRoute::kMatrixPower);
      for (long r = 0; r <= r_max; ++r) {
        const Rational a = separation_eigen(n, r);
        const Rational b = separation_recurrence(n, r);
        const Rational& c = brute.exact_values[static_cast<size_t>(r)];
        if (a != b || a != c) {
          return "routes disagree at n=" + std::to_string(n) + " r=" + std::to_string(r) +
                 ": eigen " + format_rational(a) + ", recurrence " + format_rational(b) +
                 ", matrix-power " + format_rational(c);
        }
      }
      if (n >= 4) {
        const Index path_i = table(n).index_of(CanonicalTree::path(n).encoding());
        const Index star_i = table(n).index_of(CanonicalTree::star(n).encoding());
        for (long r = 1; r <= 6; ++r) {
          const BruteforceSeparation bf = separation_bruteforce(n, r);
          const auto has = [&](Index a_, Index b_) {
            return std::find(bf.argmax.begin(), bf.argmax.end(), std::make_pair(a_, b_)) !=
                   bf.argmax.end();
          };
          if (!has(path_i, star_i) || !has(star_i, path_i)) {
            return "path/star pair missing from the argmax at n=" + std::to_string(n) +
                   " r=" + std::to_string(r);
          }
        }
      }
    }
    return std::nullopt;
  };
  if (!report("separation: eigen sum, A-recurrence and matrix powers agree; path/star attain the max", guarded(check_separation_routes))) return false;

  const auto check_updown = [&]() -> Fail {
    for (int n = 2; n <= std::min(kc, 7); ++n) {
      for (long r = 1; r <= 20; ++r) {
        if (separation_updown(n, r) != separation_eigen(n + 1, r + 1)) {
          return "up-down separation != shifted down-up separation at n=" + std::to_string(n) +
                 " r=" + std::to_string(r);
        }
      }
      if (n >= 3 && separation_updown(n, 0) != 1) {
        return "up-down separation at r=0 is not 1 at n=" + std::to_string(n);
      }
    }
    for (int n = 2; n <= std::min(kc, 5); ++n) {
      const RationalKernel ud = up_down_kernel(n, enum_bound);
      const Measure pi = plancherel_measure(ud.row_table);
      RationalMatrix power = RationalMatrix::Zero(ud.entries.rows(), ud.entries.cols());
      for (Index i = 0; i < power.rows(); ++i) power(i, i) = 1;
      for (long r = 0; r <= 6; ++r) {
        if (r > 0) power = (power * ud.entries).eval();
        Rational best = 0;
        bool first = true;
        for (Index i = 0; i < power.rows(); ++i) {
          for (Index j = 0; j < power.cols(); ++j) {
            const Rational sep = 1 - power(i, j) / pi.probs(j);
            if (first || sep > best) {
              best = sep;
              first = false;
            }
          }
        }
        if (best != separation_updown(n, r)) {
          return "up-down matrix powers disagree with the closed form at n=" +
                 std::to_string(n) + " r=" + std::to_string(r);
        }
      }
    }
    return std::nullopt;
  };
  if (!report("separation: up-down chain matches the shifted down-up profile", guarded(check_updown))) return false;

  const auto check_shape = [&]() -> Fail {
    for (int n = 2; n <= std::min(kc, 7); ++n) {
      const SeparationCurve curve = separation_curve(n, 20, SeparationRoute::kEigenFormula);
      for (long r = 0; r < 20; ++r) {
        if (curve.exact_values[static_cast<size_t>(r + 1)] > curve.exact_values[static_cast<size_t>(r)]) {
          return "separation increases from r=" + std::to_string(r) + " at n=" + std::to_string(n);
        }
      }
      for (long a = 0; a <= 10; ++a) {
        for (long b = 0; b <= 10 - a; ++b) {
          if (curve.exact_values[static_cast<size_t>(a + b)] >
              curve.exact_values[static_cast<size_t>(a)] * curve.exact_values[static_cast<size_t>(b)]) {
            return "submultiplicativity fails at n=" + std::to_string(n) + " r=" +
                   std::to_string(a) + "+" + std::to_string(b);
          }
        }
      }
    }
    for (int n = 2; n <= std::min(kc, 6); ++n) {
      const RationalKernel k = down_up_kernel(n, enum_bound);
      const Measure pi = plancherel_measure(k.row_table);
      RationalMatrix power = k.entries;
      for (long r = 1; r <= 10; ++r) {
        Rational tv_max = 0;
        for (Index i = 0; i < power.rows(); ++i) {
          Rational tv = 0;
          for (Index j = 0; j < power.cols(); ++j) {
            tv += abs(Rational(power(i, j) - pi.probs(j)));
          }
          tv /= 2;
          if (tv > tv_max) tv_max = tv;
        }
        if (tv_max > separation_eigen(n, r)) {
          return "total variation exceeds separation at n=" + std::to_string(n) +
                 " r=" + std::to_string(r);
        }
        if (r < 10) power = (power * k.entries).eval();
      }
    }
    return std::nullopt;
  };
  if (!report("separation: monotone in r, submultiplicative, dominates total variation", guarded(check_shape))) return false;

  const auto check_conventions = [&]() -> Fail {
    for (int n = 1; n <= std::min(kc, 7); ++n) {
      const Rational expected = n >= 3 ? 1 : 0;
      if (separation_eigen(n, 0) != expected) return "eigen r=0 convention broken at n=" + std::to_string(n);
      if (separation_recurrence(n, 0) != expected) return "recurrence r=0 convention broken at n=" + std::to_string(n);
      if (n <= kBruteforceCap && separation_bruteforce(n, 0).value != expected) {
        return "matrix-power r=0 convention broken at n=" + std::to_string(n);
      }
    }
    return std::nullopt;
  };
  if (!report("separation: r=0 yields 1 exactly when the chain has two or more states", guarded(check_conventions))) return false;

  const auto check_float = [&]() -> Fail {
    for (int n = 5; n <= std::min(kc, 7); ++n) {
      for (long r : {1L, 5L, 10L}) {
        const double exact = mpq_get_d(separation_eigen(n, r).get_mpq_t());
        const double approx = separation_float(n, r);
        if (std::abs(exact - approx) > 1e-12) {
          return "float route drifts from the exact value at n=" + std::to_string(n) +
                 " r=" + std::to_string(r);
        }
      }
    }
    const LimitSeries ls = limit_value(1.0, 1e-12);
    if (std::abs(ls.value - 0.024572641273329778) > 1e-12) {
      return "limit series at c=1 moved away from its frozen value";
    }
    return std::nullopt;
  };
  if (!report("float routes: agree with exact separation and the frozen limit value", guarded(check_float))) return false;

  const auto check_monte_carlo = [&]() -> Fail {
    const double exact = mpq_get_d(separation_eigen(6, 10).get_mpq_t());
    const long samples = 200000;
    const double est = geometric_tail(6, 10, samples, 12345);
    const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(samples));
    if (std::abs(est - exact) > 4 * sigma) {
      return "geometric-tail estimate " + format_float17(est) + " is more than 4 sigma from " +
             format_float17(exact);
    }
    return std::nullopt;
  };
  if (!report("Monte Carlo: geometric-tail estimator lands within 4 sigma of the exact value", guarded(check_monte_carlo))) return false;

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_time)
                           .count();
  out << "all checks passed in " << static_cast<double>(elapsed) / 1000.0 << "s\n";
  return all_ok;
}

}  // namespace treemix
