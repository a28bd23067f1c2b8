#pragma once

#include <string>
#include <vector>

#include "qchain/chain_operator.hpp"
#include "qchain/exact_spectra.hpp"
#include "qchain/excitation.hpp"
#include "qchain/ground_state.hpp"

namespace qchain {

inline constexpr const char* kToolVersion = "qchain 1.0.0";

// 17 significant digits, locale-independent.
std::string fmt17(double v);

// Every CSV starts with a comment line recording theta, epsilon and the tool
// version, then a header row.
void write_fidelity_csv(const std::string& path, const std::vector<FidelityRecord>& recs,
                        double epsilon);
void write_gap_csv(const std::string& path, const GapTable& table, double epsilon);
void write_excite_csv(const std::string& path, const std::vector<SweepPoint>& points,
                      double epsilon);

// Plot-data emitters (whitespace-separated columns).
void write_gap_plot(const std::string& path, const GapTable& table, double epsilon);
void write_cells_plot(const std::string& path, const std::vector<VariationalResult>& rs,
                      double epsilon);
void write_sweep_plot(const std::string& path, const std::vector<SweepPoint>& points,
                      double epsilon);

// Operator dump: shape, term site spans, dense block entries as
// (row, col, re, im) quadruples in the fixed basis order.
void write_operator_json(const std::string& path, const ChainOperator& H);
ChainOperator read_operator_json(const std::string& path);

} // namespace qchain
