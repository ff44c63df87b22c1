#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfk {

// Exponent tuple (j_1,...,j_n) of a monomial z_1^{j_1}...z_n^{j_n}.
// Entries are non-negative; signed arithmetic helpers report when a
// step would leave the lattice of valid exponents.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : entries_(init) { validate(); }
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) { validate(); }

    static MultiIndex unit(std::size_t n, std::size_t q) {
        if (q < 1 || q > n) throw std::invalid_argument("MultiIndex::unit: index out of range");
        MultiIndex e(n);
        e.entries_[q - 1] = 1;
        return e;
    }

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t q) const { return entries_[q]; }            // 0-based
    int at1(std::size_t q) const { return entries_.at(q - 1); }            // 1-based
    const std::vector<int>& entries() const { return entries_; }

    int degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

    MultiIndex plus(std::size_t q, int delta) const {                      // 0-based slot bump
        MultiIndex r = *this;
        r.entries_[q] += delta;
        if (r.entries_[q] < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        return r;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        check_same_size(o);
        MultiIndex r = *this;
        for (std::size_t q = 0; q < entries_.size(); ++q) r.entries_[q] += o.entries_[q];
        return r;
    }

    // j - e_q, or false when j_q = 0.
    bool try_minus_unit(std::size_t q1based, MultiIndex& out) const {
        if (entries_[q1based - 1] == 0) return false;
        out = *this;
        out.entries_[q1based - 1] -= 1;
        return true;
    }

    // j + d_s with d_s = e_s - e_{s+1}; false when j_{s+1} = 0.
    bool try_plus_d(std::size_t s1based, MultiIndex& out) const {
        if (s1based < 1 || s1based >= entries_.size())
            throw std::invalid_argument("MultiIndex::try_plus_d: step index out of range");
        if (entries_[s1based] == 0) return false;
        out = *this;
        out.entries_[s1based - 1] += 1;
        out.entries_[s1based] -= 1;
        return true;
    }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return entries_ != o.entries_; }
    bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t q = 0; q < entries_.size(); ++q) {
            if (q) s += ",";
            s += std::to_string(entries_[q]);
        }
        return s + ")";
    }

private:
    void validate() const {
        for (int e : entries_)
            if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }
    void check_same_size(const MultiIndex& o) const {
        if (entries_.size() != o.entries_.size())
            throw std::invalid_argument("MultiIndex: dimension mismatch");
    }

    std::vector<int> entries_;
};

// Order used when solving the coupled coefficient equations: m precedes j
// when the first nonzero entry of j - m, scanning from the last variable
// backwards, is positive. Equivalent to lexicographic order on the
// reversed tuple; the step j -> j + d_s always moves strictly down.
inline bool well_order_less(const MultiIndex& a, const MultiIndex& b) {
    const auto& x = a.entries();
    const auto& y = b.entries();
    for (std::size_t t = x.size(); t-- > 0;) {
        if (x[t] != y[t]) return x[t] < y[t];
    }
    return false;
}

// All j in N_0^n with |j| <= max_degree, sorted by well_order_less.
std::vector<MultiIndex> indices_up_to(std::size_t n, int max_degree);

}  // namespace nfk
