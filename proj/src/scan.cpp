#include "divmet/scan.hpp"

#include <omp.h>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "divmet/partitions.hpp"
#include "divmet/scan_ids.hpp"

namespace divmet {

std::string scan_mode_str(ScanMode m) {
    switch (m) {
        case ScanMode::All: return "all";
        case ScanMode::Coprime: return "coprime";
        case ScanMode::Squarefree: return "squarefree";
    }
    return "?";
}

ScanMode parse_scan_mode(const std::string& s) {
    if (s == "all") return ScanMode::All;
    if (s == "coprime") return ScanMode::Coprime;
    if (s == "squarefree") return ScanMode::Squarefree;
    throw std::invalid_argument("unknown scan mode: '" + s + "'");
}

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

constexpr u64 kChunkSize = 1u << 16;
constexpr u64 kCheckpointBatch = 64;  // chunks per checkpoint flush

// Canonical non-negative u64 rational. den == 0 marks "not scanned"
// (outside the squarefree domain filter).
struct RatKey64 {
    u64 num = 0, den = 1;
    bool operator==(const RatKey64& o) const { return num == o.num && den == o.den; }
};

struct KeyHash {
    size_t operator()(const RatKey64& k) const {
        u64 h = k.num * 0x9E3779B97F4A7C15ull;
        h ^= h >> 29;
        h += k.den * 0xBF58476D1CE4E5B9ull;
        h ^= h >> 32;
        return static_cast<size_t>(h);
    }
};

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

RatKey64 make_key(u128 num, u128 den) {
    if (den == 0) throw std::logic_error("scan: zero denominator");
    if (num == 0) return {0, 1};
    u128 g = gcd128(num, den);
    num /= g;
    den /= g;
    if (num > UINT64_MAX || den > UINT64_MAX)
        throw std::overflow_error("scan: value exceeds the machine-word fast path");
    return {static_cast<u64>(num), static_cast<u64>(den)};
}

bool less_key(const RatKey64& a, const RatKey64& b) {
    return (u128)a.num * b.den < (u128)b.num * a.den;
}

// Factorization of one x in a chunk; at most 8 distinct primes below 1e8,
// one extra slot for the leftover prime above sqrt(max).
struct Fac64 {
    struct PP {
        u64 p;
        uint32_t a;
    };
    PP pp[9];
    uint32_t cnt = 0;
    bool squarefree() const {
        for (uint32_t i = 0; i < cnt; ++i)
            if (pp[i].a > 1) return false;
        return true;
    }
    uint32_t big_omega() const {
        uint32_t s = 0;
        for (uint32_t i = 0; i < cnt; ++i) s += pp[i].a;
        return s;
    }
};

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return primes;
}

// Factors every x in [lo, hi] by sieving the prime list over the segment.
void factor_chunk(u64 lo, u64 hi, const std::vector<u64>& primes, std::vector<Fac64>& fac,
                  std::vector<u64>& rem) {
    const u64 len = hi - lo + 1;
    fac.assign(len, Fac64{});
    rem.resize(len);
    std::iota(rem.begin(), rem.end(), lo);
    for (u64 p : primes) {
        if (p * p > hi) break;
        u64 first = ((lo + p - 1) / p) * p;
        for (u64 m = first; m <= hi; m += p) {
            u64 i = m - lo;
            uint32_t a = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++a;
            }
            if (a) fac[i].pp[fac[i].cnt++] = {p, a};
        }
    }
    for (u64 i = 0; i < len; ++i)
        if (rem[i] > 1) fac[i].pp[fac[i].cnt++] = {rem[i], 1};
}

u128 pow128(u64 p, uint32_t a) {
    u128 r = 1;
    while (a--) r *= p;
    return r;
}

u128 sigma_pp(u64 p, uint32_t a) {
    u128 r = 1, q = 1;
    for (uint32_t i = 0; i < a; ++i) {
        q *= p;
        r += q;
    }
    return r;
}

u128 nd_of(const Fac64& f) {
    u128 r = 1;
    for (uint32_t i = 0; i < f.cnt; ++i) r *= f.pp[i].a + 1;
    return r;
}

u128 sigma_of(const Fac64& f) {
    u128 r = 1;
    for (uint32_t i = 0; i < f.cnt; ++i) r *= sigma_pp(f.pp[i].p, f.pp[i].a);
    return r;
}

u128 phi_of(const Fac64& f) {
    u128 r = 1;
    for (uint32_t i = 0; i < f.cnt; ++i) r *= pow128(f.pp[i].p, f.pp[i].a - 1) * (f.pp[i].p - 1);
    return r;
}

u128 pillai_of(const Fac64& f) {
    u128 r = 1;
    for (uint32_t i = 0; i < f.cnt; ++i)
        r *= pow128(f.pp[i].p, f.pp[i].a) * (f.pp[i].a + 1) -
             pow128(f.pp[i].p, f.pp[i].a - 1) * f.pp[i].a;
    return r;
}

u64 rad_of(const Fac64& f) {
    u64 r = 1;
    for (uint32_t i = 0; i < f.cnt; ++i) r *= f.pp[i].p;
    return r;
}

u64 gcd64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

RatKey64 eval64(int id, u64 param, u64 x, const Fac64& f) {
    const u128 x2 = (u128)x * x;
    switch (id) {
        case kScanZero: return {0, 1};
        case kScanOne: return {1, 1};
        case kScanIdentity: return {x, 1};
        case kScanRecip: return {1, x};
        case kScanXMinus1: return {x - 1, 1};
        case kScanOneMinusEps: return {x == 1 ? 0u : 1u, 1};
        case kScanBigOmega: return {f.big_omega(), 1};
        case kScanOmega: return {f.cnt, 1};
        case kScanBigUpsilon: {
            u128 s = 0;
            for (uint32_t i = 0; i < f.cnt; ++i) s += (u128)f.pp[i].p * f.pp[i].a;
            return make_key(s, 1);
        }
        case kScanUpsilon: {
            u128 s = 0;
            for (uint32_t i = 0; i < f.cnt; ++i) s += f.pp[i].p;
            return make_key(s, 1);
        }
        case kScanLd: {
            u64 r = rad_of(f);
            u128 num = 0;
            for (uint32_t i = 0; i < f.cnt; ++i) num += (u128)(r / f.pp[i].p) * f.pp[i].a;
            return make_key(num, r);
        }
        case kScanDeriv: {
            u128 s = 0;
            for (uint32_t i = 0; i < f.cnt; ++i) s += (u128)(x / f.pp[i].p) * f.pp[i].a;
            return make_key(s, 1);
        }
        case kScanNd: return make_key(nd_of(f), 1);
        case kScanSigma: return make_key(sigma_of(f), 1);
        case kScanPhi: return make_key(phi_of(f), 1);
        case kScanPillai: return make_key(pillai_of(f), 1);
        case kScanMu2: return {f.squarefree() ? 1u : 0u, 1};
        case kScanMu2OverX: return f.squarefree() ? RatKey64{1, x} : RatKey64{0, 1};
        case kScanEps: return {x == 1 ? 1u : 0u, 1};
        case kScanChi: return {gcd64(x, param) == 1 ? 1u : 0u, 1};
        case kScanChiOverX: return gcd64(x, param) == 1 ? RatKey64{1, x} : RatKey64{0, 1};
        case kScanNdOverX: return make_key(nd_of(f), x);
        case kScanNdOverX2: return make_key(nd_of(f), x2);
        case kScanSigmaOverX: return make_key(sigma_of(f), x);
        case kScanSigmaOverX2: return make_key(sigma_of(f), x2);
        case kScanPhiOverX: return make_key(phi_of(f), x);
        case kScanPhiOverX2: return make_key(phi_of(f), x2);
        case kScanXOverNd: return make_key(x, nd_of(f));
        case kScanX2OverNd: return make_key(x2, nd_of(f));
        case kScanXOverSigma: return make_key(x, sigma_of(f));
        case kScanX2OverSigma: return make_key(x2, sigma_of(f));
        case kScanXOverPhi: return make_key(x, phi_of(f));
        case kScanX2OverPhi: return make_key(x2, phi_of(f));
        case kScanRecipNd: return make_key(1, nd_of(f));
        case kScanRecipSigma: return make_key(1, sigma_of(f));
        case kScanRecipPhi: return make_key(1, phi_of(f));
        case kScanRecipPillai: return make_key(1, pillai_of(f));
        case kScanPillaiNorm: return make_key(pillai_of(f), (u128)x * nd_of(f));
        case kScanXNdOverPillai: return make_key((u128)x * nd_of(f), pillai_of(f));
        case kScanHalfPowBigOmega: return make_key(1, (u128)1 << f.big_omega());
        default: throw std::logic_error("eval64: unknown scan id");
    }
}

RatKey64 to_key64(const Rat& q) {
    if (q < 0 || !mpz_fits_ulong_p(q.get_num().get_mpz_t()) ||
        !mpz_fits_ulong_p(q.get_den().get_mpz_t()))
        throw std::overflow_error("scan: value exceeds the machine-word fast path");
    return {mpz_get_ui(q.get_num().get_mpz_t()), mpz_get_ui(q.get_den().get_mpz_t())};
}

struct Checkpoint {
    std::string func, mode;
    u64 max = 0;
    long long last_chunk = -1;
};

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    nlohmann::ordered_json j;
    j["func"] = cp.func;
    j["max"] = cp.max;
    j["mode"] = cp.mode;
    j["last_chunk"] = cp.last_chunk;
    std::ofstream out(path, std::ios::trunc);
    out << j.dump() << "\n";
}

long long read_checkpoint(const std::string& path, const std::string& func, u64 max,
                          const std::string& mode) {
    std::ifstream in(path);
    if (!in.good()) return -1;
    nlohmann::json j;
    in >> j;
    if (j.at("func").get<std::string>() != func || j.at("max").get<u64>() != max ||
        j.at("mode").get<std::string>() != mode)
        throw std::invalid_argument("checkpoint at '" + path + "' belongs to a different scan");
    return j.at("last_chunk").get<long long>();
}

// Fills values[x] for x in [1, max]. The chunk grid is fixed by kChunkSize,
// so the result is independent of the thread count and of resume points.
void compute_values(const ArithmeticFunction& fn, u64 max, ScanMode mode,
                    std::vector<RatKey64>& values, int jobs, const std::string& checkpoint_path) {
    const u64 num_chunks = (max + kChunkSize - 1) / kChunkSize;
    u64 sqrt_max = 1;
    while ((sqrt_max + 1) * (sqrt_max + 1) <= max) ++sqrt_max;
    const std::vector<u64> primes = fn.scan_id >= 0 ? primes_up_to(sqrt_max) : std::vector<u64>{};
    const bool sf_only = mode == ScanMode::Squarefree;
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();

    long long done = -1;
    std::string sidecar = checkpoint_path.empty() ? std::string() : checkpoint_path + ".data";
    if (!checkpoint_path.empty()) {
        done = read_checkpoint(checkpoint_path, fn.name, max, scan_mode_str(mode));
        if (done >= 0) {
            std::ifstream in(sidecar, std::ios::binary);
            if (!in.good()) throw std::invalid_argument("checkpoint sidecar missing: " + sidecar);
            u64 covered = std::min((u64)(done + 1) * kChunkSize, max);
            in.read(reinterpret_cast<char*>(values.data() + 1),
                    static_cast<std::streamsize>(covered * sizeof(RatKey64)));
            if (!in.good()) throw std::invalid_argument("checkpoint sidecar truncated: " + sidecar);
            in.close();
            // drop bytes past the token (a batch written before the token
            // update was interrupted)
            std::filesystem::resize_file(sidecar, covered * sizeof(RatKey64));
        } else {
            std::ofstream(sidecar, std::ios::binary | std::ios::trunc);
        }
    }

    auto run_chunk = [&](u64 c) {
        u64 lo = c * kChunkSize + 1;
        u64 hi = std::min(max, (c + 1) * kChunkSize);
        if (fn.scan_id >= 0) {
            std::vector<Fac64> fac;
            std::vector<u64> rem;
            factor_chunk(lo, hi, primes, fac, rem);
            for (u64 x = lo; x <= hi; ++x) {
                const Fac64& fx = fac[x - lo];
                if (sf_only && !fx.squarefree()) {
                    values[x] = {0, 0};
                    continue;
                }
                values[x] = eval64(fn.scan_id, fn.scan_param, x, fx);
            }
        } else {
            for (u64 x = lo; x <= hi; ++x) {
                if (sf_only && !factorize(Nat(x)).squarefree()) {
                    values[x] = {0, 0};
                    continue;
                }
                values[x] = to_key64(fn(Nat(x)).exact_value());
            }
        }
    };

    for (u64 batch = (u64)(done + 1); batch < num_chunks; batch += kCheckpointBatch) {
        u64 batch_end = checkpoint_path.empty() ? num_chunks
                                                : std::min(num_chunks, batch + kCheckpointBatch);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (u64 c = batch; c < batch_end; ++c) run_chunk(c);
        if (!checkpoint_path.empty()) {
            std::ofstream out(sidecar, std::ios::binary | std::ios::app);
            u64 lo = batch * kChunkSize + 1;
            u64 hi = std::min(max, batch_end * kChunkSize);
            out.write(reinterpret_cast<const char*>(values.data() + lo),
                      static_cast<std::streamsize>((hi - lo + 1) * sizeof(RatKey64)));
            out.close();
            write_checkpoint(checkpoint_path,
                             {fn.name, scan_mode_str(mode), max, (long long)(batch_end - 1)});
        }
        if (checkpoint_path.empty()) break;
    }
}

// Groups equal values in ascending-x order, verifies every reported member
// against an independent trial-division recomputation, and applies the
// mode's pair filter.
ScanReport assemble_report(const ArithmeticFunction& fn, u64 max, ScanMode mode,
                           const std::vector<RatKey64>& values) {
    ScanReport rep;
    rep.function = fn.name;
    rep.max = max;
    rep.mode = mode;
    rep.chunk_size = kChunkSize;
    rep.num_chunks = (max + kChunkSize - 1) / kChunkSize;

    std::unordered_map<RatKey64, uint32_t, KeyHash> count;
    count.reserve(max / 2);
    for (u64 x = 1; x <= max; ++x) {
        if (values[x].den == 0) continue;
        ++count[values[x]];
    }

    const bool full_members = mode == ScanMode::Coprime;
    struct Group {
        RatKey64 key;
        std::vector<u64> members;
        u64 member_count = 0;
    };
    std::vector<Group> groups;
    std::unordered_map<RatKey64, size_t, KeyHash> group_index;
    for (u64 x = 1; x <= max; ++x) {
        if (values[x].den == 0) continue;
        auto it = count.find(values[x]);
        if (it->second < 2) continue;
        auto [gi, fresh] = group_index.try_emplace(values[x], groups.size());
        if (fresh) groups.push_back({values[x], {}, 0});
        Group& g = groups[gi->second];
        ++g.member_count;
        if (full_members || g.members.size() < kGroupMemberCap) g.members.push_back(x);
    }
    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return less_key(a.key, b.key); });

    auto verify = [&fn](u64 x, const RatKey64& k) {
        Rat v = fn(Nat(x)).exact_value();
        if (to_key64(v) == k) return;
        throw std::logic_error("scan: sieve value for x=" + std::to_string(x) +
                               " failed recomputation from its factorization");
    };

    if (mode == ScanMode::Coprime) {
        for (const auto& g : groups) {
            if (g.members.size() > kPairwiseLimit) {
                rep.pairwise_truncated = true;
                continue;
            }
            Rat value = make_rat(Nat(g.key.num), Nat(g.key.den));
            std::set<u64> verified;
            for (size_t i = 0; i < g.members.size(); ++i)
                for (size_t j = i + 1; j < g.members.size(); ++j) {
                    if (gcd64(g.members[i], g.members[j]) != 1) continue;
                    for (u64 e : {g.members[i], g.members[j]})
                        if (verified.insert(e).second) verify(e, g.key);
                    rep.pairs.push_back({g.members[i], g.members[j], value});
                }
        }
    } else {
        for (const auto& g : groups) {
            CollisionGroup out;
            out.value = make_rat(Nat(g.key.num), Nat(g.key.den));
            out.member_count = g.member_count;
            out.members = g.members;
            for (u64 m : out.members) verify(m, g.key);
            rep.groups.push_back(std::move(out));
        }
    }
    return rep;
}

}  // namespace

bool ScanReport::contains_collision(uint64_t x, uint64_t y) const {
    if (x > y) std::swap(x, y);
    for (const auto& p : pairs)
        if (p.x == x && p.y == y) return true;
    for (const auto& g : groups) {
        bool has_x = std::binary_search(g.members.begin(), g.members.end(), x);
        bool has_y = std::binary_search(g.members.begin(), g.members.end(), y);
        if (has_x && has_y) return true;
    }
    return false;
}

ScanReport scan_collisions(const ArithmeticFunction& f, uint64_t max, ScanMode mode, int jobs,
                           const std::string& checkpoint_path) {
    if (f.kind != ValueKind::Exact)
        throw std::invalid_argument("scan_collisions: OrderKey function rejected");
    if (max < 2) throw std::invalid_argument("scan_collisions: max must be >= 2");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<RatKey64> values(max + 1);
    compute_values(f, max, mode, values, jobs, checkpoint_path);
    ScanReport rep = assemble_report(f, max, mode, values);
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ScanReport scan_collisions_reference(const ArithmeticFunction& f, uint64_t max, ScanMode mode) {
    if (f.kind != ValueKind::Exact)
        throw std::invalid_argument("scan_collisions: OrderKey function rejected");
    if (max < 2) throw std::invalid_argument("scan_collisions: max must be >= 2");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<RatKey64> values(max + 1);
    for (u64 x = 1; x <= max; ++x) {
        if (mode == ScanMode::Squarefree && !factorize(Nat(x)).squarefree()) {
            values[x] = {0, 0};
            continue;
        }
        values[x] = to_key64(f(Nat(x)).exact_value());
    }
    ScanReport rep = assemble_report(f, max, mode, values);
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

MultiperfectReport scan_multiperfect(uint64_t max, int jobs) {
    if (max < 2) throw std::invalid_argument("scan_multiperfect: max must be >= 2");
    auto t0 = std::chrono::steady_clock::now();
    const u64 num_chunks = (max + kChunkSize - 1) / kChunkSize;
    u64 sqrt_max = 1;
    while ((sqrt_max + 1) * (sqrt_max + 1) <= max) ++sqrt_max;
    const std::vector<u64> primes = primes_up_to(sqrt_max);
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();

    std::vector<std::vector<MultiperfectHit>> per_chunk(num_chunks);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (u64 c = 0; c < num_chunks; ++c) {
        u64 lo = c * kChunkSize + 1;
        u64 hi = std::min(max, (c + 1) * kChunkSize);
        std::vector<Fac64> fac;
        std::vector<u64> rem;
        factor_chunk(lo, hi, primes, fac, rem);
        for (u64 x = std::max<u64>(lo, 2); x <= hi; ++x) {
            u128 s = sigma_of(fac[x - lo]);
            if (s % x == 0 && s / x >= 2) per_chunk[c].push_back({x, (u64)(s / x)});
        }
    }

    MultiperfectReport rep;
    rep.max = max;
    for (auto& chunk : per_chunk)
        for (auto& hit : chunk) {
            // hits re-verified through the slow factorization path
            Factorization fx = factorize(Nat(hit.x));
            Nat sig = 1;
            for (const auto& pp : fx.pairs) {
                Nat q;
                mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent + 1);
                sig *= (q - 1) / (pp.prime - 1);
            }
            if (sig != Nat(hit.k) * Nat(hit.x))
                throw std::logic_error("scan_multiperfect: hit failed recomputation");
            if (hit.x % 2 == 1) rep.all_even = false;
            rep.hits.push_back(hit);
        }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

MultiperfectReport scan_multiperfect_reference(uint64_t max) {
    if (max < 2) throw std::invalid_argument("scan_multiperfect: max must be >= 2");
    // divisor-addition sieve: an independent route to sigma
    std::vector<u64> sigma(max + 1, 0);
    for (u64 d = 1; d <= max; ++d)
        for (u64 m = d; m <= max; m += d) sigma[m] += d;
    MultiperfectReport rep;
    rep.max = max;
    for (u64 x = 2; x <= max; ++x)
        if (sigma[x] % x == 0 && sigma[x] / x >= 2) {
            rep.hits.push_back({x, sigma[x] / x});
            if (x % 2 == 1) rep.all_even = false;
        }
    return rep;
}

std::pair<Nat, Nat> partition_bounds(const Nat& n) {
    if (n < 2) throw std::invalid_argument("partition_bounds: n must be >= 2");
    Factorization f = factorize(n);
    Nat nd = 1;
    for (const auto& pp : f.pairs) nd *= (pp.exponent + 1);
    unsigned long tau = nd.get_ui();
    unsigned long omega_big = f.big_omega();
    return {partition_count(tau - 1), partition_count(omega_big - 1)};
}

CensusReport partition_census(const Nat& n, const std::vector<ArithmeticFunction>& fns) {
    if (n < 2) throw std::invalid_argument("partition_census: n must be >= 2");
    CensusReport rep;
    rep.n = n;
    std::set<std::vector<unsigned long>> patterns;
    for (const auto& f : fns) {
        rep.functions.push_back(f.name);
        DivisorPartition p = quotient_by_preorder(preorder_from_function(f, n));
        if (std::find(rep.distinct_partitions.begin(), rep.distinct_partitions.end(), p) ==
            rep.distinct_partitions.end())
            rep.distinct_partitions.push_back(p);
        patterns.insert(p.pattern());
    }
    rep.distinct_patterns.assign(patterns.begin(), patterns.end());
    auto bounds = partition_bounds(n);
    rep.bound_nd = bounds.first;
    rep.bound_omega = bounds.second;
    return rep;
}

}  // namespace divmet
