#ifndef BICOUPLE_OUTPUT_HPP
#define BICOUPLE_OUTPUT_HPP

#include <string>

#include "bicouple/presets.hpp"

namespace bicouple {

// Shortest-exact textual form of a double (17 significant digits).
std::string format_g17(double x);

// profile_<label>.csv with header x,value,side. A nodal state emits both
// interface values as two rows at x = 0.5.
void write_profile_csv(const std::string& path, const Grid& grid, const BiDomainState& state);

// ledger_<label>.csv with header step,t,C,Cbar,drift (drift = cbar_n - cbar_0).
void write_ledger_csv(const std::string& path, const MassLedger& ledger);

// summary.csv with one row per run: coupling,C0bar,CTbar,abs_drift.
void write_summary_csv(const std::string& path, const std::vector<CouplingRun>& runs);

// Static overlay plot of every run's final profile (one polyline per field).
void write_profile_svg(const std::string& path, const std::vector<CouplingRun>& runs);

// Writes all artifacts of a run set into dir (created if absent).
void emit_outputs(const RunSetOutcome& outcome, const std::string& dir, bool plot);

}  // namespace bicouple

#endif
