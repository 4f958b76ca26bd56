#pragma once

#include <array>
#include <string>
#include <vector>

#include "latticerect/fraction.hpp"

namespace latticerect {

/// 2x2 matrix over K, row-major.
class Matrix2 {
public:
    Matrix2(FieldElem a, FieldElem b, FieldElem c, FieldElem d);
    static Matrix2 identity(BaseField f, int nvars);
    static Matrix2 diag(const FieldElem& a, const FieldElem& d);

    const FieldElem& at(int r, int c) const { return e_[(size_t)(2 * r + c)]; }
    FieldElem& at(int r, int c) { return e_[(size_t)(2 * r + c)]; }

    FieldElem det() const;
    FieldElem trace() const;
    Matrix2 operator*(const Matrix2& o) const;
    Matrix2 operator+(const Matrix2& o) const;
    Matrix2 operator-(const Matrix2& o) const;
    Matrix2 scaled(const FieldElem& s) const;
    Matrix2 inverse() const;  // throws on singular
    std::array<FieldElem, 2> apply(const std::array<FieldElem, 2>& v) const;

    bool operator==(const Matrix2& o) const { return e_ == o.e_; }
    bool operator!=(const Matrix2& o) const { return !(*this == o); }
    static int compare(const Matrix2& a, const Matrix2& b);

    /// All four entries lie in the local ring R.
    bool entries_in_R() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::array<FieldElem, 4> e_;
};

}  // namespace latticerect
