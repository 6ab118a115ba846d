#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "lbz/errors.hpp"

namespace lbz {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class FieldKind : std::uint8_t { Rationals, PrimeField };

/// Identifies the coefficient field: the rationals Q or GF(p) for a prime
/// p with 2 <= p < 2^16.
struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t p = 0; // modulus, PrimeField only

    static FieldSpec rationals() { return FieldSpec{FieldKind::Rationals, 0}; }

    static FieldSpec gf(std::uint32_t p) {
        if (p < 2 || p >= (1u << 16))
            throw bad_params("prime field modulus must satisfy 2 <= p < 2^16, got " + std::to_string(p));
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw bad_params("prime field modulus must be prime, got " + std::to_string(p));
        return FieldSpec{FieldKind::PrimeField, p};
    }

    bool is_prime_field() const { return kind == FieldKind::PrimeField; }
    bool is_rationals() const { return kind == FieldKind::Rationals; }

    std::string name() const {
        return is_rationals() ? std::string("Q") : "GF(" + std::to_string(p) + ")";
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline void require_same_field(const FieldSpec& a, const FieldSpec& b) {
    if (!(a == b))
        throw mixed_fields("cannot mix " + a.name() + " and " + b.name());
}

/// An exact field element.  Rational values are kept in lowest terms with
/// positive denominator; prime field values are residues in [0, p).
class Scalar {
public:
    Scalar() = default; // rational zero

    static Scalar zero(const FieldSpec& spec) { return Scalar(spec); }

    static Scalar one(const FieldSpec& spec) {
        Scalar s(spec);
        if (spec.is_prime_field())
            s.res_ = spec.p > 1 ? 1 : 0;
        else
            s.rat_ = 1;
        return s;
    }

    /// Image of an integer in the field.
    static Scalar of_int(const FieldSpec& spec, long long v) {
        Scalar s(spec);
        if (spec.is_prime_field()) {
            long long m = v % static_cast<long long>(spec.p);
            if (m < 0) m += spec.p;
            s.res_ = static_cast<std::uint32_t>(m);
        } else {
            s.rat_ = v;
        }
        return s;
    }

    static Scalar residue(const FieldSpec& spec, std::uint32_t r) {
        if (!spec.is_prime_field()) throw bad_params("residue scalar needs a prime field");
        Scalar s(spec);
        s.res_ = r % spec.p;
        return s;
    }

    static Scalar rational(BigInt num, BigInt den = 1) {
        if (den == 0) throw division_by_zero("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Scalar s(FieldSpec::rationals());
        s.rat_ = BigRational(std::move(num), std::move(den)); // cpp_rational canonicalizes
        return s;
    }

    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const { return spec_.is_prime_field() ? res_ == 0 : rat_.is_zero(); }
    bool is_one() const { return spec_.is_prime_field() ? res_ == 1 % spec_.p : rat_ == 1; }

    std::uint32_t residue_value() const {
        if (!spec_.is_prime_field()) throw bad_params("not a prime field scalar");
        return res_;
    }
    const BigRational& rational_value() const {
        if (!spec_.is_rationals()) throw bad_params("not a rational scalar");
        return rat_;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        require_same_field(a.spec_, b.spec_);
        Scalar r(a.spec_);
        if (a.spec_.is_prime_field())
            r.res_ = add_mod(a.res_, b.res_, a.spec_.p);
        else
            r.rat_ = a.rat_ + b.rat_;
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        require_same_field(a.spec_, b.spec_);
        Scalar r(a.spec_);
        if (a.spec_.is_prime_field())
            r.res_ = static_cast<std::uint32_t>((std::uint64_t(a.res_) * b.res_) % a.spec_.p);
        else
            r.rat_ = a.rat_ * b.rat_;
        return r;
    }

    Scalar operator-() const {
        Scalar r(spec_);
        if (spec_.is_prime_field())
            r.res_ = res_ == 0 ? 0 : spec_.p - res_;
        else
            r.rat_ = -rat_;
        return r;
    }

    Scalar inv() const {
        if (is_zero()) throw division_by_zero("inverse of zero");
        Scalar r(spec_);
        if (spec_.is_prime_field())
            r.res_ = inv_mod(res_, spec_.p);
        else
            r.rat_ = 1 / rat_;
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.spec_ == b.spec_ && (a.spec_.is_prime_field() ? a.res_ == b.res_ : a.rat_ == b.rat_);
    }

    /// Total order used for canonical sorting of vectors and matrices.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        require_same_field(a.spec_, b.spec_);
        if (a.spec_.is_prime_field()) return a.res_ <=> b.res_;
        if (a.rat_ < b.rat_) return std::strong_ordering::less;
        if (b.rat_ < a.rat_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Canonical string form: "k" for residues, "a" or "a/b" for rationals.
    std::string str() const {
        if (spec_.is_prime_field()) return std::to_string(res_);
        const BigInt num = boost::multiprecision::numerator(rat_);
        const BigInt den = boost::multiprecision::denominator(rat_);
        std::string s = num.str();
        if (den != 1) s += "/" + den.str();
        return s;
    }

    /// Parses the canonical string form for the given field.
    static Scalar parse(const FieldSpec& spec, const std::string& text);

private:
    explicit Scalar(const FieldSpec& spec) : spec_(spec) {}

    static std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }

    static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
        // extended Euclid
        std::int64_t t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p;
        return static_cast<std::uint32_t>(t);
    }

    FieldSpec spec_ = FieldSpec::rationals();
    std::uint32_t res_ = 0;
    BigRational rat_;
};

inline Scalar Scalar::parse(const FieldSpec& spec, const std::string& text) {
    if (text.empty()) throw parse_error("empty scalar");
    if (spec.is_prime_field()) {
        std::uint64_t v = 0;
        for (char c : text) {
            if (c < '0' || c > '9') throw parse_error("bad residue '" + text + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v >= (1ull << 32)) throw parse_error("residue out of range '" + text + "'");
        }
        if (v >= spec.p) throw parse_error("residue " + text + " out of range for " + spec.name());
        return Scalar::residue(spec, static_cast<std::uint32_t>(v));
    }
    auto parse_int = [](const std::string& s) -> BigInt {
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        if (i == s.size()) throw parse_error("bad integer '" + s + "'");
        BigInt v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw parse_error("bad integer '" + s + "'");
            v = v * 10 + (s[i] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Scalar::rational(parse_int(text));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw parse_error("denominator must be positive in '" + text + "'");
    return Scalar::rational(parse_int(text.substr(0, slash)), std::move(den));
}

} // namespace lbz
