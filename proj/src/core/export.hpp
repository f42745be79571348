#pragma once

#include <string>

#include "core/config.hpp"

namespace pentapath {

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Writes the run artifacts into out_dir:
//   breakpoints.csv  iteration,index,u1..u6 for every logged iteration
//   objective.csv    iteration,objective,step,n,min_clearance
//   pedals.csv       final-path pedal endpoints for vector-field plots
//   summary.json     length, total_curvature, elapsed_seconds, final_breakpoints
//   config.json      the validated configuration (reloadable)
void export_results(const RunResult& result, const RunConfig& cfg,
                    const std::string& out_dir);

}  // namespace pentapath
