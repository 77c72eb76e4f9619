#pragma once

#include <string>
#include <vector>

#include "hasseforge/base.hpp"

namespace hf {

// Dense integer polynomial, constant term first. Trailing zeros are trimmed;
// the zero polynomial has an empty coefficient vector and no degree.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    static IntPoly constant(const Int& c);
    static IntPoly variable();  // t

    // accepts "t^2+3t+1" style or a dense list "1,3,1" (constant term first)
    static IntPoly parse(const std::string& text);

    bool is_zero() const { return c_.empty(); }
    int degree() const;  // throws domain_error on the zero polynomial
    const Int& lc() const;
    Int coeff(size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
    const std::vector<Int>& coeffs() const { return c_; }

    Int operator()(const Int& x) const;  // Horner
    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly&, const IntPoly&);
    friend IntPoly operator-(const IntPoly&, const IntPoly&);
    friend IntPoly operator*(const IntPoly&, const IntPoly&);
    IntPoly operator-() const;
    IntPoly mul_scalar(const Int& s) const;
    IntPoly shifted(size_t k) const;  // * t^k
    bool operator==(const IntPoly&) const = default;

    std::string str() const;  // human form in t

private:
    std::vector<Int> c_;
    void trim();
};

Int height(const IntPoly& p);                     // max |coeff|, p nonzero
Int tuple_height(const std::vector<IntPoly>& t);  // max across components
Int content(const IntPoly& p);                    // nonnegative; 0 for zero poly
IntPoly primitive_part(const IntPoly& p);         // content stripped, sign kept

// pseudo-remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + R
IntPoly pseudo_rem(const IntPoly& A, const IntPoly& B);
// exact division by an integer or polynomial; throws internal_error if inexact
IntPoly divide_exact(const IntPoly& A, const Int& d);
bool try_divide(const IntPoly& A, const IntPoly& B, IntPoly& quotient);  // A = B*q?

IntPoly poly_gcd(IntPoly A, IntPoly B);  // primitive with positive lc (0 if both 0)

// Res(P,Q) with the convention Res = lc(P)^deg(Q) * prod Q(alpha) over roots
// of P; subresultant pseudo-remainder sequence, exact
Int resultant(const IntPoly& P, const IntPoly& Q);
Int discriminant(const IntPoly& P);  // deg >= 1

// P = sign * content * prod factors[k-1]^k, factors primitive squarefree
// pairwise coprime with positive leading coefficients (Yun)
struct SquarefreeDecomposition {
    int sign = 1;
    Int content{1};
    std::vector<IntPoly> factors;
};
SquarefreeDecomposition squarefree_decomposition(const IntPoly& P);

struct SquareClassification {
    enum Kind { nonsquare, square_in_base, square_over_closure_only } kind;
    Int constant;  // delta = constant * root^2 when kind != nonsquare
    IntPoly root;
};
SquareClassification classify_square(const IntPoly& delta);

}  // namespace hf
