#include "mdepth/field.hpp"

#include <string>

namespace mdepth {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Field::Field(int p) : p_(p) {
    if (p < 2 || p > kMaxModulus || !is_prime(p)) {
        throw InputError("field modulus must be a prime in [2, " +
                         std::to_string(kMaxModulus) + "], got " + std::to_string(p));
    }
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw InputError("division by zero in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2) is the inverse; p <= 251 keeps everything in int range.
    int result = 1;
    int base = a;
    int e = p_ - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % p_;
        base = (base * base) % p_;
        e >>= 1;
    }
    return static_cast<Scalar>(result);
}

} // namespace mdepth
