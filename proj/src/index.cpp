#include "rmtheta/index.hpp"

#include <algorithm>
#include <map>

namespace rmtheta {

std::string Index::to_string() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

TripleKey triple_key(const Triple &t) {
    TripleKey k = {t.x - 2 * t.y, t.x + t.y - t.z, t.x + t.y + t.z};
    std::sort(k.begin(), k.end());
    return k;
}

bool in_S(const Triple &t) {
    return (t.x - 2 * t.y).is_two_torsion() && (t.x + t.y - t.z).is_two_torsion() &&
           (t.x + t.y + t.z).is_two_torsion();
}

std::vector<Triple> enumerate_S() {
    std::vector<Triple> out;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c) {
                Triple t{Index::from_ordinal(a), Index::from_ordinal(b), Index::from_ordinal(c)};
                if (in_S(t))
                    out.push_back(t);
            }
    return out;
}

std::vector<std::pair<Triple, Triple>> equivalent_pairs() {
    const auto s = enumerate_S();
    // group positions by (x, key); S is sorted so groups keep increasing positions
    std::map<std::pair<Index, TripleKey>, std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < s.size(); ++k)
        classes[{s[k].x, triple_key(s[k])}].push_back(k);
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (const auto &[_, members] : classes)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                idx.emplace_back(members[a], members[b]);
    std::sort(idx.begin(), idx.end());
    std::vector<std::pair<Triple, Triple>> out;
    out.reserve(idx.size());
    for (auto [a, b] : idx)
        out.emplace_back(s[a], s[b]);
    return out;
}

} // namespace rmtheta
