#pragma once

// Embedded dataset of the worked low-dimensional examples: weighted
// projective planes, the rank-one horospherical threefolds for SL2xSL2 and
// SL3, the twelve symmetric SL2xC* threefolds transcribed from the figures,
// and the two SL2xSL3 horospherical fourfolds with their decomposition
// families. Entries are stored in the same declarative document format users
// write, so the catalog doubles as format documentation.

#include "horoke/datumio.hpp"

namespace horoke {

struct UnknownId : std::runtime_error {
  explicit UnknownId(const std::string& id) : std::runtime_error("unknown catalog id: " + id) {}
};

namespace catalog {

std::vector<std::string> list();
const DatumFile& get(const std::string& id);  // resolves aliases
bool has(const std::string& id);

// raw document text for an id (exactly what get() parses)
const std::string& raw(const std::string& id);

}  // namespace catalog

}  // namespace horoke
