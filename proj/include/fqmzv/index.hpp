#ifndef FQMZV_INDEX_HPP
#define FQMZV_INDEX_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fqmzv {

/// An index (s_1,...,s_r) of positive integers.
class Index {
public:
    Index() = default;
    Index(std::initializer_list<int> s) : s_(s) { validate(); }
    explicit Index(std::vector<int> s) : s_(std::move(s)) { validate(); }

    int dep() const { return static_cast<int>(s_.size()); }
    int wt() const { return std::accumulate(s_.begin(), s_.end(), 0); }
    int operator[](int i) const { return s_.at(static_cast<size_t>(i)); }  // 0-based
    const std::vector<int>& parts() const { return s_; }

    Index reversed() const {
        std::vector<int> r(s_.rbegin(), s_.rend());
        return Index(std::move(r));
    }

    /// d_i = s_i + ... + s_r for i = 1..r (0-based result vector).
    std::vector<int> block_profile() const {
        std::vector<int> d(s_.size());
        int acc = 0;
        for (size_t i = s_.size(); i-- > 0;) {
            acc += s_[i];
            d[i] = acc;
        }
        return d;
    }
    /// d = d_1 + ... + d_r.
    int total_dim() const {
        auto d = block_profile();
        return std::accumulate(d.begin(), d.end(), 0);
    }

    friend bool operator==(const Index& a, const Index& b) { return a.s_ == b.s_; }
    friend bool operator!=(const Index& a, const Index& b) { return a.s_ != b.s_; }
    friend bool operator<(const Index& a, const Index& b) { return a.s_ < b.s_; }

private:
    void validate() const {
        if (s_.empty()) throw std::invalid_argument("index must have depth >= 1");
        for (int v : s_)
            if (v < 1) throw std::invalid_argument("index entries must be positive");
    }
    std::vector<int> s_;
};

}  // namespace fqmzv

#endif
