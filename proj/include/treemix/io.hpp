#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "treemix/spectral.hpp"

namespace treemix {

// 17 significant digits: enough to round-trip any double, bit for bit.
std::string format_float17(double x);

// Plain-text and CSV dumps.  All of them are deterministic byte for byte:
// fixed headers, table order for rows, canonical "p/q" rationals.

// "n=<size> count=<T_n>" then one encoding per line.
void write_table(std::ostream& os, const TreeTable& table);

// "rows=<n> cols=<m> nnz=<k>" then "i j value" triples, row-major.
void write_count_matrix(std::ostream& os, const CountMatrix& m);

// CSV with encoding headers on both axes; entries as "p/q".
void write_kernel_csv(std::ostream& os, const RationalKernel& k);

// CSV: encoding,probability.
void write_measure_csv(std::ostream& os, const Measure& mu);

// CSV: encoding,m,n,sg per tree of the table.
void write_stats_csv(std::ostream& os, const TreeTable& table);

// CSV: eigenvalue,multiplicity.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

// CSV: n,r,s_star,route; exact curves print "p/q", float curves print
// 17-significant-digit floats.
void write_curves_csv(std::ostream& os, std::span<const SeparationCurve> curves);

// CSV: c,value,terms_used,tail_bound.
void write_limit_csv(std::ostream& os, const LimitSeries& ls);

// CSV: step,index,encoding.
void write_trajectory_csv(std::ostream& os, const TrajectorySample& traj,
                          const TreeTable& table);

// JSON payloads mirroring the dumps above.  Rationals appear as
// {"num": "...", "den": "..."} with decimal strings; counts and weights are
// decimal strings too (they outgrow 64-bit integers quickly).
nlohmann::json rational_to_json(const Rational& q);
nlohmann::json table_to_json(const TreeTable& table);
nlohmann::json count_matrix_to_json(const CountMatrix& m);
nlohmann::json kernel_to_json(const RationalKernel& k);
nlohmann::json measure_to_json(const Measure& mu);
nlohmann::json stats_to_json(const TreeTable& table);
nlohmann::json spectrum_to_json(const Spectrum& s);
nlohmann::json curves_to_json(std::span<const SeparationCurve> curves);
nlohmann::json limit_to_json(const LimitSeries& ls);
nlohmann::json trajectory_to_json(const TrajectorySample& traj, const TreeTable& table);

}  // namespace treemix
