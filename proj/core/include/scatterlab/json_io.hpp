#pragma once

#include <string>

#include "scatterlab/diagram.hpp"
#include "scatterlab/series.hpp"

namespace scatterlab {

/* JSON serialization. Every top-level document carries "format": 1 (readers
   accept a missing field and reject other versions). Rationals are written as
   [numerator, denominator] pairs, integers included (they appear as [n, 1]);
   readers additionally accept bare integers and "p/q" strings wherever a
   rational is expected. Numerators or denominators beyond the machine-long
   range are written as decimal strings inside the pair.
   Output is compact single-line JSON with stable key and element order, so
   equal values serialize to identical bytes. All readers throw
   std::invalid_argument on malformed input, naming the offending element. */

std::string seed_to_json(const Seed& s);
Seed seed_from_json(const std::string& text);

// {"format":1, "seed":{...}, "cutoff":L,
//  "walls":[{"normal":[...], "t":t, "s":[p,q], "support":{"generators":[...]}}]}
std::string diagram_to_json(const ScatteringDiagram& d);
ScatteringDiagram diagram_from_json(const std::string& text);

// {"format":1, "base":{"m":[...], "n":[...]}, "cutoff":L,
//  "terms":[{"shift":[...], "coeff":[p,q]}]}
std::string series_to_json(const TruncatedSeries& t);
TruncatedSeries series_from_json(const std::string& text);

}  // namespace scatterlab
