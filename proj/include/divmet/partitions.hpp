#pragma once

#include "divmet/rational.hpp"

namespace divmet {

// Number of integer partitions of k, via Euler's pentagonal-number
// recurrence. p(0) = 1. Exact at any k.
Nat partition_count(unsigned long k);

}  // namespace divmet
