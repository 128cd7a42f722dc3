#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "decoy/errors.hpp"

namespace decoy {

// Weakly decreasing sequence of positive integers. The empty partition is valid.
class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] == 0 || (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])) {
                throw ValidationError("partition: parts must be weakly decreasing and positive");
            }
        }
    }

    Partition(std::initializer_list<unsigned> parts) : Partition(std::vector<unsigned>(parts)) {}

    // Hook shape alpha(a, b) = (a, 1, ..., 1) with b trailing ones.
    static Partition hook(unsigned a, unsigned b) {
        if (a == 0) throw ValidationError("partition: hook arm must be >= 1");
        std::vector<unsigned> p(b + 1, 1);
        p[0] = a;
        return Partition(std::move(p));
    }

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned length() const { return static_cast<unsigned>(parts_.size()); }
    unsigned weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

    // 1-based with zero padding: part(i) = lambda_i, 0 for i > length.
    unsigned part(unsigned i) const { return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0; }

    bool empty() const { return parts_.empty(); }
    bool is_hook() const {
        if (parts_.empty()) return false;
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] != 1) return false;
        return true;
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

  private:
    std::vector<unsigned> parts_;
};

}  // namespace decoy
