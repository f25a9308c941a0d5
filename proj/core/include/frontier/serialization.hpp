#pragma once

#include <string>

#include "frontier/forest.hpp"
#include "frontier/rrct.hpp"

namespace frontier {

// Canonical JSON encodings for golden-file tests: keys sorted, floats printed
// at shortest round-trip precision, no whitespace. Byte-stable for a fixed
// seed across platforms.
std::string to_canonical_json(const RRCTree& tree);
std::string to_canonical_json(const Forest& forest);

}  // namespace frontier
