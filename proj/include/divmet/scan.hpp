#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divmet/orders.hpp"

namespace divmet {

enum class ScanMode { All, Coprime, Squarefree };
std::string scan_mode_str(ScanMode m);
ScanMode parse_scan_mode(const std::string& s);

// One equal-value class found in [1, N]. Members are sorted ascending and
// capped at kGroupMemberCap; member_count keeps the true size.
struct CollisionGroup {
    Rat value;
    std::vector<uint64_t> members;
    uint64_t member_count = 0;
};

struct CollisionPair {
    uint64_t x, y;  // x < y
    Rat value;
};

constexpr size_t kGroupMemberCap = 64;
// Groups larger than this are not pair-enumerated in coprime mode; the
// report flags the truncation instead of silently dropping it.
constexpr size_t kPairwiseLimit = 20000;

struct ScanReport {
    std::string function;
    uint64_t max = 0;  // scanned range [1, max]
    ScanMode mode = ScanMode::All;
    uint64_t chunk_size = 0;
    uint64_t num_chunks = 0;
    std::vector<CollisionGroup> groups;  // All / Squarefree modes
    std::vector<CollisionPair> pairs;    // Coprime mode
    bool pairwise_truncated = false;
    double elapsed_seconds = 0;  // diagnostics only, never serialized

    bool contains_collision(uint64_t x, uint64_t y) const;
};

// Chunk-parallel collision scan. Values are evaluated per chunk from
// segmented factorizations in exact u64 rational arithmetic, grouped, and
// every reported member is re-verified through the slow trial-division
// path. jobs <= 0 uses the OpenMP default. The report is byte-identical
// for any thread count. checkpoint_path enables resume: the JSON token
// records the last completed chunk, value data lives in a ".data" sidecar.
ScanReport scan_collisions(const ArithmeticFunction& f, uint64_t max, ScanMode mode, int jobs = 0,
                           const std::string& checkpoint_path = {});

// Serial reference: evaluates through the exact GMP path one x at a time.
ScanReport scan_collisions_reference(const ArithmeticFunction& f, uint64_t max, ScanMode mode);

struct MultiperfectHit {
    uint64_t x;
    uint64_t k;  // sigma(x) = k * x, k >= 2
};

struct MultiperfectReport {
    uint64_t max = 0;
    std::vector<MultiperfectHit> hits;
    bool all_even = true;
    double elapsed_seconds = 0;
};

MultiperfectReport scan_multiperfect(uint64_t max, int jobs = 0);
MultiperfectReport scan_multiperfect_reference(uint64_t max);

// (p(nd(n)-1), p(Omega(n)-1)): the partition-count bounds on the number of
// quotient types, for general generating functions and for admissible ones.
std::pair<Nat, Nat> partition_bounds(const Nat& n);

struct CensusReport {
    Nat n;
    std::vector<std::string> functions;
    std::vector<DivisorPartition> distinct_partitions;          // canonical set partitions
    std::vector<std::vector<unsigned long>> distinct_patterns;  // block-size shapes over D_n \ {1}
    Nat bound_nd, bound_omega;
};

// Distinct quotient partitions realized by the supplied functions on D_n.
// A lower bound on the realizable preorder types, compared against the
// partition-count bounds.
CensusReport partition_census(const Nat& n, const std::vector<ArithmeticFunction>& fns);

}  // namespace divmet
