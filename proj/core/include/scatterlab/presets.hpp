#pragma once

#include <string>
#include <vector>

#include "scatterlab/lattice.hpp"

namespace scatterlab {

/* Bundled seeds, keyed by name:
     rank 2: A2, B2, C2, G2, A1(1), A2(2)
     rank 3: A3, B3, C3, A2(1), Markov
   Rank-2 types use B = [[0, -d1], [d2, 0]]. Unknown names throw. */
Seed preset_seed(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace scatterlab
