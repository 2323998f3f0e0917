#include "tshuf/partition.hpp"

#include <algorithm>
#include <numeric>

#include "tshuf/error.hpp"

namespace tshuf {

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::transpose() const {
    Partition t;
    if (parts.empty()) return t;
    for (int i = 1; i <= parts.front(); ++i) {
        int count = 0;
        for (int p : parts) count += p >= i;
        t.parts.push_back(count);
    }
    return t;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

Partition make_partition(std::vector<int> parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw InvalidArgument("partition parts must be positive");
        if (i && parts[i] > parts[i - 1]) throw InvalidArgument("partition parts must decrease");
    }
    return Partition{std::move(parts)};
}

namespace {

void extend(int remaining, int cap, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition{cur});
        return;
    }
    for (int p = std::min(cap, remaining); p >= 1; --p) {
        cur.push_back(p);
        extend(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_desc(int n) {
    if (n < 0) throw InvalidArgument("negative partition size");
    std::vector<Partition> out;
    std::vector<int> cur;
    extend(n, n, cur, out);
    return out;
}

}  // namespace tshuf
