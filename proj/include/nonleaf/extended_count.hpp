#pragma once

#include "nonleaf/numeric.hpp"

#include <compare>
#include <string>

namespace nonleaf {

// A count in N ∪ {omega}. omega absorbs addition and multiplication by
// anything positive; 0 * omega = 0. Comparisons are total with omega on top.
class ExtCount {
public:
    ExtCount() = default;
    ExtCount(Int v) : value_(std::move(v)) {
        if (value_ < 0) throw std::invalid_argument("ExtCount: negative value");
    }
    ExtCount(int v) : ExtCount(Int(v)) {}
    ExtCount(std::uint64_t v) : value_(v) {}

    static ExtCount omega() {
        ExtCount c;
        c.omega_ = true;
        return c;
    }

    bool is_omega() const { return omega_; }
    bool is_finite() const { return !omega_; }
    bool is_zero() const { return !omega_ && value_ == 0; }

    const Int& finite() const {
        if (omega_) throw std::logic_error("ExtCount: omega has no finite value");
        return value_;
    }

    friend ExtCount operator+(const ExtCount& a, const ExtCount& b) {
        if (a.omega_ || b.omega_) return omega();
        return ExtCount(a.value_ + b.value_);
    }

    ExtCount& operator+=(const ExtCount& o) { return *this = *this + o; }

    friend ExtCount operator*(const ExtCount& a, const ExtCount& b) {
        if (a.is_zero() || b.is_zero()) return ExtCount(0);
        if (a.omega_ || b.omega_) return omega();
        return ExtCount(a.value_ * b.value_);
    }

    // floor(a / d) for finite d >= 1; floor(omega / d) = omega
    ExtCount floor_div(const Int& d) const {
        if (d < 1) throw std::invalid_argument("ExtCount::floor_div: divisor must be >= 1");
        if (omega_) return omega();
        return ExtCount(value_ / d);
    }

    friend bool operator==(const ExtCount& a, const ExtCount& b) {
        return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
    }
    friend bool operator!=(const ExtCount& a, const ExtCount& b) { return !(a == b); }
    friend bool operator<(const ExtCount& a, const ExtCount& b) {
        if (a.omega_) return false;
        if (b.omega_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>(const ExtCount& a, const ExtCount& b) { return b < a; }
    friend bool operator<=(const ExtCount& a, const ExtCount& b) { return !(b < a); }
    friend bool operator>=(const ExtCount& a, const ExtCount& b) { return !(a < b); }

    std::string str() const { return omega_ ? "omega" : value_.str(); }

private:
    bool omega_ = false;
    Int value_ = 0;
};

}  // namespace nonleaf
