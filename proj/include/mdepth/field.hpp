#pragma once

#include <cstdint>

#include "mdepth/errors.hpp"

namespace mdepth {

/// Residues are stored in [0, p); one byte is enough for every supported modulus.
using Scalar = std::uint8_t;

/// Largest supported prime modulus.
inline constexpr int kMaxModulus = 251;

bool is_prime(int n);

/// Arithmetic in the prime field GF(p).
///
/// All operands must already be reduced; use reduce() to bring arbitrary
/// integers into range.  Division is exposed through inv(), which rejects 0.
class Field {
public:
    /// Throws InputError unless 2 <= p <= 251 and p is prime.
    explicit Field(int p);

    int modulus() const { return p_; }

    Scalar reduce(long long x) const {
        long long r = x % p_;
        if (r < 0) r += p_;
        return static_cast<Scalar>(r);
    }

    Scalar add(Scalar a, Scalar b) const {
        int s = int(a) + int(b);
        return static_cast<Scalar>(s >= p_ ? s - p_ : s);
    }

    Scalar sub(Scalar a, Scalar b) const {
        int s = int(a) - int(b);
        return static_cast<Scalar>(s < 0 ? s + p_ : s);
    }

    Scalar mul(Scalar a, Scalar b) const {
        return static_cast<Scalar>((int(a) * int(b)) % p_);
    }

    Scalar neg(Scalar a) const {
        return a == 0 ? Scalar{0} : static_cast<Scalar>(p_ - int(a));
    }

    /// Multiplicative inverse; throws InputError on 0.
    Scalar inv(Scalar a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    int p_;
};

} // namespace mdepth
