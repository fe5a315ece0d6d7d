#ifndef LATCOH_LATTICE_HPP
#define LATCOH_LATTICE_HPP

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <latcoh/error.hpp>

namespace latcoh
{

/**
 * A point of the lattice Z^r. Coordinates are unitless integers; the
 * semigroup-facing APIs require them to be nonnegative, but intermediate
 * queries (e.g. Delta(p - 1 - l)) legitimately go below zero.
 *
 * Ordering (operator<=>) is lexicographic, which is what the deterministic
 * set outputs use. The componentwise partial order is leq().
 */
class LatticePoint
{
public:
    LatticePoint() = default;
    explicit LatticePoint(std::vector<int> coords) : c_(std::move(coords)) {}
    LatticePoint(std::initializer_list<int> coords) : c_(coords) {}

    static LatticePoint zeros(std::size_t r) { return LatticePoint(std::vector<int>(r, 0)); }
    static LatticePoint ones(std::size_t r) { return LatticePoint(std::vector<int>(r, 1)); }
    static LatticePoint filled(std::size_t r, int v) { return LatticePoint(std::vector<int>(r, v)); }
    static LatticePoint unit(std::size_t r, std::size_t i)
    {
        LatticePoint e = zeros(r);
        e.c_[i] = 1;
        return e;
    }

    std::size_t size() const noexcept { return c_.size(); }
    int operator[](std::size_t i) const { return c_[i]; }
    int &operator[](std::size_t i) { return c_[i]; }
    const std::vector<int> &coords() const noexcept { return c_; }
    auto begin() const noexcept { return c_.begin(); }
    auto end() const noexcept { return c_.end(); }

    // |l| = sum of the coordinates.
    long norm() const { return std::accumulate(c_.begin(), c_.end(), 0L); }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](int v) { return v == 0; });
    }
    bool nonnegative() const
    {
        return std::all_of(c_.begin(), c_.end(), [](int v) { return v >= 0; });
    }

    LatticePoint &operator+=(const LatticePoint &o)
    {
        assert(size() == o.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }
    LatticePoint &operator-=(const LatticePoint &o)
    {
        assert(size() == o.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }
    friend LatticePoint operator+(LatticePoint a, const LatticePoint &b) { return a += b; }
    friend LatticePoint operator-(LatticePoint a, const LatticePoint &b) { return a -= b; }
    friend LatticePoint operator*(int k, LatticePoint a)
    {
        for (auto &v : a.c_) {
            v *= k;
        }
        return a;
    }

    friend bool operator==(const LatticePoint &, const LatticePoint &) = default;
    friend auto operator<=>(const LatticePoint &, const LatticePoint &) = default;

    // Componentwise a <= b.
    friend bool leq(const LatticePoint &a, const LatticePoint &b)
    {
        assert(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.c_[i] > b.c_[i]) {
                return false;
            }
        }
        return true;
    }

    friend LatticePoint min(const LatticePoint &a, const LatticePoint &b)
    {
        assert(a.size() == b.size());
        LatticePoint m = a;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m.c_[i] = std::min(a.c_[i], b.c_[i]);
        }
        return m;
    }
    friend LatticePoint max(const LatticePoint &a, const LatticePoint &b)
    {
        assert(a.size() == b.size());
        LatticePoint m = a;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m.c_[i] = std::max(a.c_[i], b.c_[i]);
        }
        return m;
    }

    std::string str() const
    {
        if (c_.size() == 1) {
            return std::to_string(c_[0]);
        }
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            s += (i ? "," : "") + std::to_string(c_[i]);
        }
        return s + ")";
    }

    friend std::ostream &operator<<(std::ostream &os, const LatticePoint &p) { return os << p.str(); }

private:
    std::vector<int> c_;
};

// Rectangle R(lo, hi) of lattice points, with a lexicographic mixed-radix
// indexing: the first coordinate is the most significant digit, so index
// order is lexicographic order and every l - e_i precedes l.
class Box
{
public:
    Box() = default;
    Box(LatticePoint lo, LatticePoint hi) : lo_(std::move(lo)), hi_(std::move(hi))
    {
        if (lo_.size() != hi_.size()) {
            throw InputError("box corners have different dimensions");
        }
        if (!leq(lo_, hi_)) {
            throw InputError("box corner " + lo_.str() + " is not below " + hi_.str());
        }
        const std::size_t r = lo_.size();
        extent_.resize(r);
        stride_.resize(r);
        std::size_t s = 1;
        for (std::size_t k = r; k-- > 0;) {
            extent_[k] = static_cast<std::size_t>(hi_[k] - lo_[k] + 1);
            stride_[k] = s;
            s *= extent_[k];
        }
        volume_ = s;
    }
    explicit Box(const LatticePoint &hi) : Box(LatticePoint::zeros(hi.size()), hi) {}

    std::size_t rank() const noexcept { return lo_.size(); }
    const LatticePoint &lo() const noexcept { return lo_; }
    const LatticePoint &hi() const noexcept { return hi_; }
    std::size_t volume() const noexcept { return volume_; }
    std::size_t extent(std::size_t i) const { return extent_[i]; }
    std::size_t stride(std::size_t i) const { return stride_[i]; }

    bool contains(const LatticePoint &p) const
    {
        return p.size() == rank() && leq(lo_, p) && leq(p, hi_);
    }

    std::size_t index(const LatticePoint &p) const
    {
        assert(contains(p));
        std::size_t idx = 0;
        for (std::size_t k = 0; k < rank(); ++k) {
            idx += static_cast<std::size_t>(p[k] - lo_[k]) * stride_[k];
        }
        return idx;
    }

    LatticePoint point(std::size_t idx) const
    {
        assert(idx < volume_);
        LatticePoint p = lo_;
        for (std::size_t k = 0; k < rank(); ++k) {
            p[k] += static_cast<int>(idx / stride_[k]);
            idx %= stride_[k];
        }
        return p;
    }

    // Coordinate k of the point with the given index, without building it.
    int coord(std::size_t idx, std::size_t k) const
    {
        return lo_[k] + static_cast<int>((idx / stride_[k]) % extent_[k]);
    }

    friend bool operator==(const Box &a, const Box &b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

private:
    LatticePoint lo_, hi_;
    std::vector<std::size_t> extent_, stride_;
    std::size_t volume_ = 0;
};

// Calls f(point) for every lattice point of the box in index order.
template <typename F>
void for_each_point(const Box &box, F &&f)
{
    if (box.volume() == 0) {
        return;
    }
    LatticePoint p = box.lo();
    const std::size_t r = box.rank();
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        f(static_cast<const LatticePoint &>(p));
        for (std::size_t k = r; k-- > 0;) {
            if (p[k] < box.hi()[k]) {
                ++p[k];
                break;
            }
            p[k] = box.lo()[k];
        }
    }
}

} // namespace latcoh

#endif
