#pragma once

#include <string>
#include <vector>

namespace tshuf {

// Weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    int size() const;
    int length() const { return static_cast<int>(parts.size()); }
    Partition transpose() const;
    std::string to_string() const;
    friend bool operator==(const Partition&, const Partition&) = default;
};

// Throws InvalidArgument unless the parts are positive and weakly decreasing.
Partition make_partition(std::vector<int> parts);

// All partitions of n, decreasing lexicographically: (n), ..., (1^n).
std::vector<Partition> partitions_desc(int n);

}  // namespace tshuf
