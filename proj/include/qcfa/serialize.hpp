#pragma once

#include "qcfa/models.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace qcfa {

// Order-preserving JSON keeps serialized machines byte-stable: the same
// machine always dumps to the same bytes.
using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Machine file format, version 1. Complex numbers are [re, im] pairs,
// matrices row-major nested arrays, measurement families label -> matrix
// maps in outcome order. Unknown fields are rejected.
Json to_json(const MachineDescription& m);

/// Throws ParseError on malformed documents (bad JSON, unknown fields,
/// missing fields, unresolvable state names, malformed numbers).
MachineDescription machine_from_json(const Json& j);

std::string serialize(const MachineDescription& m);
MachineDescription parse(const std::string& text);

void save_machine(const MachineDescription& m, const std::string& path);
MachineDescription load_machine(const std::string& path);

}  // namespace qcfa
