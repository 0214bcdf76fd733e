#include "treemix/io.hpp"

#include <cstdio>
#include <ostream>

namespace treemix {

std::string format_float17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_table(std::ostream& os, const TreeTable& table) {
  os << "n=" << table.tree_size() << " count=" << table.count() << "\n";
  for (Index i = 0; i < table.count(); ++i) os << table.at(i).encoding() << "\n";
}

void write_count_matrix(std::ostream& os, const CountMatrix& m) {
  os << "rows=" << m.rows() << " cols=" << m.cols() << " nnz=" << m.entries.size() << "\n";
  for (const auto& [key, value] : m.entries) {
    os << key.first << " " << key.second << " " << value.get_str() << "\n";
  }
}

void write_kernel_csv(std::ostream& os, const RationalKernel& k) {
  for (Index j = 0; j < k.col_table.count(); ++j) os << "," << k.col_table.at(j).encoding();
  os << "\n";
  for (Index i = 0; i < k.row_table.count(); ++i) {
    os << k.row_table.at(i).encoding();
    for (Index j = 0; j < k.entries.cols(); ++j) os << "," << format_rational(k.entries(i, j));
    os << "\n";
  }
}

void write_measure_csv(std::ostream& os, const Measure& mu) {
  os << "encoding,probability\n";
  for (Index i = 0; i < mu.table.count(); ++i) {
    os << mu.table.at(i).encoding() << "," << format_rational(mu.probs(i)) << "\n";
  }
}

void write_stats_csv(std::ostream& os, const TreeTable& table) {
  os << "encoding,m,n,sg\n";
  for (Index i = 0; i < table.count(); ++i) {
    const TreeStats st = tree_stats(table.at(i));
    os << table.at(i).encoding() << "," << st.m.get_str() << "," << st.n_weight.get_str()
       << "," << st.sg_order.get_str() << "\n";
  }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "eigenvalue,multiplicity\n";
  for (const auto& [value, mult] : s.eigenvalues) {
    os << format_rational(value) << "," << mult.get_str() << "\n";
  }
}

void write_curves_csv(std::ostream& os, std::span<const SeparationCurve> curves) {
  os << "n,r,s_star,route\n";
  for (const SeparationCurve& c : curves) {
    const size_t len = c.exact ? c.exact_values.size() : c.float_values.size();
    for (size_t r = 0; r < len; ++r) {
      os << c.n << "," << r << ",";
      if (c.exact) {
        os << format_rational(c.exact_values[r]);
      } else {
        os << format_float17(c.float_values[r]);
      }
      os << "," << route_name(c.route) << "\n";
    }
  }
}

void write_limit_csv(std::ostream& os, const LimitSeries& ls) {
  os << "c,value,terms_used,tail_bound\n";
  os << format_float17(ls.c) << "," << format_float17(ls.value) << "," << ls.terms_used
     << "," << format_float17(ls.tail_bound) << "\n";
}

void write_trajectory_csv(std::ostream& os, const TrajectorySample& traj,
                          const TreeTable& table) {
  os << "step,index,encoding\n";
  for (size_t s = 0; s < traj.states.size(); ++s) {
    os << s << "," << traj.states[s] << "," << table.at(traj.states[s]).encoding() << "\n";
  }
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

nlohmann::json table_to_json(const TreeTable& table) {
  nlohmann::json encodings = nlohmann::json::array();
  for (Index i = 0; i < table.count(); ++i) encodings.push_back(table.at(i).encoding());
  return {{"n", table.tree_size()},
          {"count", static_cast<long long>(table.count())},
          {"encodings", std::move(encodings)}};
}

nlohmann::json count_matrix_to_json(const CountMatrix& m) {
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& [key, value] : m.entries) {
    triples.push_back({{"row", static_cast<long long>(key.first)},
                       {"col", static_cast<long long>(key.second)},
                       {"value", value.get_str()}});
  }
  return {{"rows", static_cast<long long>(m.rows())},
          {"cols", static_cast<long long>(m.cols())},
          {"entries", std::move(triples)}};
}

nlohmann::json kernel_to_json(const RationalKernel& k) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < k.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < k.entries.cols(); ++j) row.push_back(rational_to_json(k.entries(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"row_encodings", table_to_json(k.row_table)["encodings"]},
          {"col_encodings", table_to_json(k.col_table)["encodings"]},
          {"entries", std::move(rows)}};
}

nlohmann::json measure_to_json(const Measure& mu) {
  nlohmann::json items = nlohmann::json::array();
  for (Index i = 0; i < mu.table.count(); ++i) {
    items.push_back({{"encoding", mu.table.at(i).encoding()},
                     {"probability", rational_to_json(mu.probs(i))}});
  }
  return items;
}

nlohmann::json stats_to_json(const TreeTable& table) {
  nlohmann::json items = nlohmann::json::array();
  for (Index i = 0; i < table.count(); ++i) {
    const TreeStats st = tree_stats(table.at(i));
    items.push_back({{"encoding", table.at(i).encoding()},
                     {"m", st.m.get_str()},
                     {"n", st.n_weight.get_str()},
                     {"sg", st.sg_order.get_str()}});
  }
  return items;
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& [value, mult] : s.eigenvalues) {
    items.push_back({{"eigenvalue", rational_to_json(value)}, {"multiplicity", mult.get_str()}});
  }
  return {{"n", s.n}, {"eigenvalues", std::move(items)}};
}

nlohmann::json curves_to_json(std::span<const SeparationCurve> curves) {
  nlohmann::json out = nlohmann::json::array();
  for (const SeparationCurve& c : curves) {
    nlohmann::json values = nlohmann::json::array();
    const size_t len = c.exact ? c.exact_values.size() : c.float_values.size();
    for (size_t r = 0; r < len; ++r) {
      nlohmann::json row = {{"r", r}};
      if (c.exact) {
        row["s_star"] = rational_to_json(c.exact_values[r]);
      } else {
        row["s_star"] = c.float_values[r];
      }
      values.push_back(std::move(row));
    }
    out.push_back({{"n", c.n},
                   {"route", std::string(route_name(c.route))},
                   {"exact", c.exact},
                   {"values", std::move(values)}});
  }
  return out;
}

nlohmann::json limit_to_json(const LimitSeries& ls) {
  return {{"c", ls.c},
          {"value", ls.value},
          {"terms_used", ls.terms_used},
          {"tail_bound", ls.tail_bound}};
}

nlohmann::json trajectory_to_json(const TrajectorySample& traj, const TreeTable& table) {
  nlohmann::json states = nlohmann::json::array();
  for (size_t s = 0; s < traj.states.size(); ++s) {
    states.push_back({{"step", s},
                      {"index", static_cast<long long>(traj.states[s])},
                      {"encoding", table.at(traj.states[s]).encoding()}});
  }
  return {{"n", traj.n},
          {"seed", traj.seed},
          {"generator", traj.generator},
          {"states", std::move(states)}};
}

}  // namespace treemix
