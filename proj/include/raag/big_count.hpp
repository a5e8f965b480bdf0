#ifndef RAAG_BIG_COUNT_HPP
#define RAAG_BIG_COUNT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace raag {

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative count that keeps the form 2^e + a (with 0 <= a < 2^e) symbolic
// whenever it has one, so that quantities like 2^(18 n^3) compare and print
// without ever materializing the integer.  The plain integer is produced
// lazily on demand and cached.
class BigCount {
public:
    BigCount() : value_(0) {}
    explicit BigCount(BigInt v);
    static BigCount power_of_two(BigInt exponent);

    bool has_exponent_form() const { return exponent_.has_value(); }
    const BigInt& exponent() const;  // e in 2^e + a; requires the form
    const BigInt& addend() const;    // a in 2^e + a; requires the form
    bool is_power_of_two() const { return exponent_.has_value() && addend_ == 0; }

    // floor(log2(value)); display helper, value must be positive.
    BigInt log2_floor() const;

    // Materializes 2^e + a when only the symbolic form is stored.
    const BigInt& value() const;

    // value + k for k >= 0; stays symbolic while a + k < 2^e.
    BigCount plus(const BigInt& k) const;
    // value^k for k >= 0; stays symbolic for pure powers of two.
    BigCount pow(const BigInt& k) const;

    // Compares without materializing when both sides carry exponent forms.
    int compare(const BigCount& o) const;
    bool operator==(const BigCount& o) const { return compare(o) == 0; }
    bool operator!=(const BigCount& o) const { return compare(o) != 0; }
    bool operator<(const BigCount& o) const { return compare(o) < 0; }
    bool operator<=(const BigCount& o) const { return compare(o) <= 0; }
    bool operator>(const BigCount& o) const { return compare(o) > 0; }
    bool operator>=(const BigCount& o) const { return compare(o) >= 0; }

    std::string to_string() const;  // "2^e", "2^e + a", or the decimal digits

private:
    std::optional<BigInt> exponent_;
    BigInt addend_ = 0;
    mutable std::optional<BigInt> value_;
};

} // namespace raag

#endif
