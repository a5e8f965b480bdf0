#include "raag/big_count.hpp"

#include <limits>

#include "raag/errors.hpp"

namespace raag {

namespace {

unsigned checked_shift(const BigInt& e) {
    require_input(e >= 0 && e <= std::numeric_limits<unsigned>::max() / 2,
                  "exponent too large to materialize");
    return static_cast<unsigned>(e);
}

// -1 / 0 / +1 for (2^e + a) versus the plain integer p, with 0 <= a < 2^e.
int compare_form_with_plain(const BigInt& e, const BigInt& a, const BigInt& p) {
    if (p <= 0) return 1;  // the form is always >= 1
    const BigInt mp = static_cast<unsigned>(boost::multiprecision::msb(p));
    if (e != mp) return e < mp ? -1 : 1;
    const BigInt rest = p - (BigInt(1) << checked_shift(e));
    if (a == rest) return 0;
    return a < rest ? -1 : 1;
}

} // namespace

BigCount::BigCount(BigInt v) {
    require_input(v >= 0, "counts are nonnegative");
    if (v > 0 && (v & (v - 1)) == 0) {
        exponent_ = static_cast<unsigned>(boost::multiprecision::msb(v));
        addend_ = 0;
    }
    value_ = std::move(v);
}

BigCount BigCount::power_of_two(BigInt exponent) {
    require_input(exponent >= 0, "exponent must be nonnegative");
    BigCount out;
    out.exponent_ = std::move(exponent);
    out.addend_ = 0;
    out.value_.reset();
    return out;
}

const BigInt& BigCount::exponent() const {
    require_pre(exponent_.has_value(), "no exponent form");
    return *exponent_;
}

const BigInt& BigCount::addend() const {
    require_pre(exponent_.has_value(), "no exponent form");
    return addend_;
}

BigInt BigCount::log2_floor() const {
    if (exponent_) return *exponent_;  // a < 2^e keeps the leading bit at e
    require_pre(value_.has_value() && *value_ > 0, "log of a nonpositive count");
    return static_cast<unsigned>(boost::multiprecision::msb(*value_));
}

const BigInt& BigCount::value() const {
    if (!value_) {
        value_ = (BigInt(1) << checked_shift(*exponent_)) + addend_;
    }
    return *value_;
}

BigCount BigCount::plus(const BigInt& k) const {
    require_input(k >= 0, "counts are nonnegative");
    if (exponent_) {
        BigInt a = addend_ + k;
        // a < 2^e must survive for the form to stay meaningful.
        if (a == 0 || BigInt(static_cast<unsigned>(boost::multiprecision::msb(a))) < *exponent_) {
            BigCount out;
            out.exponent_ = *exponent_;
            out.addend_ = std::move(a);
            out.value_.reset();
            if (value_) out.value_ = *value_ + k;
            return out;
        }
    }
    return BigCount(value() + k);
}

BigCount BigCount::pow(const BigInt& k) const {
    require_input(k >= 0, "exponent must be nonnegative");
    if (k == 0) return BigCount(1);
    if (is_power_of_two()) return power_of_two(*exponent_ * k);
    require_input(k <= std::numeric_limits<unsigned>::max(), "power too large");
    return BigCount(boost::multiprecision::pow(value(), static_cast<unsigned>(k)));
}

int BigCount::compare(const BigCount& o) const {
    if (exponent_ && o.exponent_) {
        if (*exponent_ != *o.exponent_) return *exponent_ < *o.exponent_ ? -1 : 1;
        if (addend_ == o.addend_) return 0;
        return addend_ < o.addend_ ? -1 : 1;
    }
    if (exponent_) return compare_form_with_plain(*exponent_, addend_, o.value());
    if (o.exponent_) return -compare_form_with_plain(*o.exponent_, o.addend_, value());
    if (*value_ == *o.value_) return 0;
    return *value_ < *o.value_ ? -1 : 1;
}

std::string BigCount::to_string() const {
    if (exponent_) {
        std::string out = "2^" + exponent_->str();
        if (addend_ != 0) out += " + " + addend_.str();
        return out;
    }
    return value_->str();
}

} // namespace raag
