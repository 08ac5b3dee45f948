#include "projforce/gf.hpp"

#include <algorithm>
#include <numeric>

namespace projforce {

namespace {

// Polynomials over F_p as coefficient vectors c_0..c_d, trailing zeros trimmed.
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

// a mod b, b monic.
Poly poly_mod(Poly a, const Poly& b, int p) {
    while (poly_degree(a) >= poly_degree(b)) {
        int shift = poly_degree(a) - poly_degree(b);
        int lead = a.back();
        for (std::size_t i = 0; i < b.size(); ++i) {
            int& c = a[i + shift];
            c = (c - lead * b[i]) % p;
            if (c < 0) c += p;
        }
        trim(a);
    }
    return a;
}

bool is_zero(const Poly& a) { return a.empty(); }

// Decode integer encoding sum c_i p^i into coefficients, degree < len.
Poly decode(int v, int p) {
    Poly c;
    while (v > 0) {
        c.push_back(v % p);
        v /= p;
    }
    return c;
}

bool divides(const Poly& divisor, const Poly& poly, int p) {
    return is_zero(poly_mod(poly, divisor, p));
}

// Monic degree-e polynomial with non-leading coefficients encoded by `code`.
Poly monic_from_code(int code, int p, int e) {
    Poly f = decode(code, p);
    f.resize(e + 1, 0);
    f[e] = 1;
    return f;
}

bool is_irreducible(const Poly& f, int p) {
    int e = poly_degree(f);
    // Trial division by every monic polynomial of degree 1..e/2.
    for (int d = 1; 2 * d <= e; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            if (divides(monic_from_code(code, p, d), f, p)) return false;
        }
    }
    return true;
}

// Lexicographically least monic irreducible of degree e over F_p, ordered by
// the integer encoding of the non-leading coefficients.
Poly least_irreducible(int p, int e) {
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
        Poly f = monic_from_code(code, p, e);
        if (is_irreducible(f, p)) return f;
    }
    throw Error("no irreducible polynomial found"); // unreachable for valid (p, e)
}

int smallest_prime_factor(int n) {
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

} // namespace

Field::Field(int q) {
    if (q < 2) throw NotPrimePowerError("field order must be at least 2, got " + std::to_string(q));
    int p = smallest_prime_factor(q);
    int e = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1)
        throw NotPrimePowerError(std::to_string(q) + " is not a prime power");
    if (q > max_supported_order)
        throw UnsupportedOrderError("field order " + std::to_string(q) + " exceeds supported maximum " +
                                    std::to_string(max_supported_order));
    q_ = q;
    p_ = p;
    e_ = e;

    Poly mod;
    if (e > 1) {
        mod = least_irreducible(p, e);
        modulus_.assign(mod.begin(), mod.end() - 1); // drop the leading 1
    }

    // Element i <-> coefficient vector decode(i, p); build tables.
    add_.resize(static_cast<std::size_t>(q) * q);
    mul_.resize(static_cast<std::size_t>(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    auto encode = [&](const Poly& c) {
        int v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
        return static_cast<FieldElement>(v);
    };
    for (int a = 0; a < q; ++a) {
        Poly ca = decode(a, p);
        Poly na(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) na[i] = (p - ca[i]) % p;
        trim(na);
        neg_[a] = encode(na);
        for (int b = 0; b < q; ++b) {
            Poly cb = decode(b, p);
            Poly sum(std::max(ca.size(), cb.size()), 0);
            for (std::size_t i = 0; i < ca.size(); ++i) sum[i] += ca[i];
            for (std::size_t i = 0; i < cb.size(); ++i) sum[i] = (sum[i] + cb[i]) % p;
            for (auto& c : sum) c %= p;
            trim(sum);
            add_[idx(a, b)] = encode(sum);

            Poly prod;
            if (!ca.empty() && !cb.empty()) {
                prod.assign(ca.size() + cb.size() - 1, 0);
                for (std::size_t i = 0; i < ca.size(); ++i)
                    for (std::size_t j = 0; j < cb.size(); ++j)
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                trim(prod);
                if (e > 1) prod = poly_mod(std::move(prod), mod, p);
            }
            mul_[idx(a, b)] = encode(prod);
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[idx(a, b)] == 1) {
                inv_[a] = static_cast<FieldElement>(b);
                break;
            }
}

FieldElement Field::inv(FieldElement a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
}

FieldElement Field::dot(std::span<const FieldElement> u, std::span<const FieldElement> v) const {
    if (u.size() != v.size())
        throw LengthMismatchError("dot product of vectors with lengths " + std::to_string(u.size()) + " and " +
                                  std::to_string(v.size()));
    FieldElement acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], v[i]));
    return acc;
}

} // namespace projforce
