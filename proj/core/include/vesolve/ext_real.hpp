#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace vesolve {

/// Extended real in (-inf, +inf]. The infinite value is an explicit flag, so
/// indicator constraints stay exact; addition saturates at +infinity.
class ExtReal {
public:
    constexpr ExtReal() = default;

    // NOLINTNEXTLINE(google-explicit-constructor)
    ExtReal(double v) {
        if (std::isnan(v)) {
            throw std::domain_error("ExtReal: NaN value");
        }
        if (std::isinf(v)) {
            if (v < 0) {
                throw std::domain_error("ExtReal: -infinity is not representable");
            }
            infinite_ = true;
            return;
        }
        value_ = v;
    }

    static constexpr ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
    [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }

    /// Finite value; throws for +infinity.
    [[nodiscard]] double value() const {
        if (infinite_) {
            throw std::domain_error("ExtReal: value() of +infinity");
        }
        return value_;
    }

    /// Finite value, or +inf as a double.
    [[nodiscard]] constexpr double to_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    ExtReal& operator+=(const ExtReal& o) {
        if (infinite_ || o.infinite_) {
            infinite_ = true;
            value_ = 0.0;
        } else {
            value_ += o.value_;
        }
        return *this;
    }

    friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

    friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ <=> b.infinite_;
        }
        return a.value_ <=> b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
        if (x.infinite_) {
            return os << "inf";
        }
        return os << x.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

} // namespace vesolve
