#include "divmet/partitions.hpp"

#include <vector>

namespace divmet {

Nat partition_count(unsigned long k) {
    std::vector<Nat> p(k + 1);
    p[0] = 1;
    for (unsigned long m = 1; m <= k; ++m) {
        Nat acc = 0;
        for (unsigned long j = 1;; ++j) {
            unsigned long g1 = j * (3 * j - 1) / 2;  // generalized pentagonal numbers
            unsigned long g2 = j * (3 * j + 1) / 2;
            if (g1 > m) break;
            Nat term = p[m - g1];
            if (g2 <= m) term += p[m - g2];
            if (j & 1)
                acc += term;
            else
                acc -= term;
        }
        p[m] = acc;
    }
    return p[k];
}

}  // namespace divmet
