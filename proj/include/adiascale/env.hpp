// env.hpp - process-level knobs read from the environment.
//
//   ADIASCALE_THREADS    worker threads for quadrature nodes and ensemble
//                        samples (default: hardware concurrency). Results are
//                        identical for every value.
//   ADIASCALE_PRECISION  significant digits for CSV and plot-data numbers
//                        (default: shortest round-trip representation).
#pragma once

#include <optional>
#include <string>

namespace adiascale {

int thread_count();
std::optional<int> output_precision();

// Formats per output_precision(); the default round-trips exactly.
std::string format_double(double value);

}  // namespace adiascale
