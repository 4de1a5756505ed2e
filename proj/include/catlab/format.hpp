#pragma once

#include <string>

namespace catlab::format {

// Shortest decimal that round-trips to the same double; byte-stable across
// runs and platforms, which keeps CSV/JSON artifacts reproducible.
std::string shortest(double v);

}  // namespace catlab::format
