#ifndef PROJFORCE_GF_HPP
#define PROJFORCE_GF_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "projforce/errors.hpp"

namespace projforce {

/// Integer encoding of an element of F_q: for q = p^e the value
/// sum c_i p^i in [0, q) encodes the polynomial residue sum c_i x^i.
/// For prime q this is just the residue mod q.
using FieldElement = std::uint8_t;

/// Exact arithmetic in F_q for prime powers q <= 32.
///
/// For extension fields the modulus is the lexicographically least monic
/// irreducible polynomial of degree e over F_p, ordered by the integer
/// encoding sum c_i p^i of its non-leading coefficients (so F_4 uses
/// x^2+x+1, F_8 uses x^3+x+1, F_9 uses x^2+1, ...). Irreducibility is
/// verified at construction by trial division.
///
/// Immutable after construction; all operations are pure table lookups
/// and safe for concurrent use.
class Field {
public:
    static constexpr int max_supported_order = 32;

    /// Throws NotPrimePowerError / UnsupportedOrderError.
    explicit Field(int q);

    int q() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return e_; }

    /// Coefficients c_0..c_{e-1} of the monic modulus x^e + sum c_i x^i;
    /// empty for prime fields.
    const std::vector<FieldElement>& modulus() const { return modulus_; }

    FieldElement add(FieldElement a, FieldElement b) const { return add_[idx(a, b)]; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add_[idx(a, neg_[b])]; }
    FieldElement mul(FieldElement a, FieldElement b) const { return mul_[idx(a, b)]; }
    FieldElement neg(FieldElement a) const { return neg_[a]; }

    /// Throws DivisionByZeroError for a = 0.
    FieldElement inv(FieldElement a) const;

    /// sum u_i v_i in F_q. Throws LengthMismatchError.
    FieldElement dot(std::span<const FieldElement> u, std::span<const FieldElement> v) const;

    bool operator==(const Field& other) const { return q_ == other.q_; }

private:
    std::size_t idx(FieldElement a, FieldElement b) const {
        return static_cast<std::size_t>(a) * q_ + b;
    }

    int q_ = 0, p_ = 0, e_ = 0;
    std::vector<FieldElement> modulus_;
    std::vector<FieldElement> add_, mul_; // q*q tables
    std::vector<FieldElement> neg_, inv_; // q tables
};

} // namespace projforce

#endif
