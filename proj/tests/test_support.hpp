#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <vector>

#include "rmtheta/field.hpp"

namespace rmtheta::testing {

class RandomElements {
public:
    explicit RandomElements(unsigned long seed) : gen_(gmp_randinit_mt) { gen_.seed(seed); }

    Element operator()(const Field &f) {
        std::vector<mpz_class> c(f.degree());
        for (auto &x : c)
            x = gen_.get_z_range(f.characteristic());
        return f.from_coefficients(std::move(c));
    }

    Element nonzero(const Field &f) {
        while (true) {
            Element e = (*this)(f);
            if (!e.is_zero())
                return e;
        }
    }

private:
    gmp_randclass gen_;
};

inline bool is_odd_prime(unsigned long p) {
    if (p < 3 || p % 2 == 0)
        return false;
    for (unsigned long d = 3; d * d <= p; d += 2)
        if (p % d == 0)
            return false;
    return true;
}


// Plain-integer oracle, independent of Index arithmetic.
inline bool even_pair(int a, int b) { return ((a % 4 + 4) % 4) % 2 == 0 && ((b % 4 + 4) % 4) % 2 == 0; }

using Raw = std::array<int, 6>; // x1 x2 y1 y2 z1 z2

inline bool raw_in_S(const Raw &t) {
    return even_pair(t[0] - 2 * t[2], t[1] - 2 * t[3]) && even_pair(t[0] + t[2] - t[4], t[1] + t[3] - t[5]) &&
           even_pair(t[0] + t[2] + t[4], t[1] + t[3] + t[5]);
}

inline std::array<std::array<int, 2>, 3> raw_derived(const Raw &t) {
    auto m = [](int v) { return ((v % 4) + 4) % 4; };
    return {{{m(t[0] - 2 * t[2]), m(t[1] - 2 * t[3])},
             {m(t[0] + t[2] - t[4]), m(t[1] + t[3] - t[5])},
             {m(t[0] + t[2] + t[4]), m(t[1] + t[3] + t[5])}}};
}

// Search for a permutation P with d1 = d2 P.
inline bool raw_equivalent(const Raw &a, const Raw &b) {
    auto d1 = raw_derived(a), d2 = raw_derived(b);
    std::array<int, 3> perm = {0, 1, 2};
    do {
        bool ok = true;
        for (int k = 0; k < 3; ++k)
            ok = ok && d1[k] == d2[perm[k]];
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::vector<Raw> raw_S() {
    std::vector<Raw> out;
    for (int k = 0; k < 4096; ++k) {
        Raw t = {k >> 10 & 3, k >> 8 & 3, k >> 6 & 3, k >> 4 & 3, k >> 2 & 3, k & 3};
        if (raw_in_S(t))
            out.push_back(t);
    }
    return out;
}

} // namespace rmtheta::testing
