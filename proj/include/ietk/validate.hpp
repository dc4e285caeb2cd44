#pragma once

#include <string>
#include <vector>

#include "ietk/instance.hpp"
#include "ietk/schema.hpp"

namespace ietk {

struct Violation {
  std::string field;    // e.g. "entities[2].surface"
  std::string message;  // e.g. "surface mismatch"
};

// Structural checks only: span bounds, surface/text agreement, duplicate
// mentions. Reports every violation, not just the first.
std::vector<Violation> validate_structure(const Instance& instance);

// Structural checks plus schema membership of every label.
std::vector<Violation> validate_instance(const Instance& instance,
                                         const LabelSchema& schema);

}  // namespace ietk
