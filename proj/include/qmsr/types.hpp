#pragma once

#include <cstdint>
#include <vector>

namespace qmsr {

// Nodes are labeled 1..n throughout the public API.
using Node = int;
using NodeSet = std::vector<Node>;  // sorted, no duplicates

using Value = std::int64_t;  // agent state
using Time = std::int64_t;   // step index k
using StateVector = std::vector<Value>;

}  // namespace qmsr
