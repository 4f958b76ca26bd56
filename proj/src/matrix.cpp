#include "latticerect/matrix.hpp"

#include "latticerect/errors.hpp"

namespace latticerect {

Matrix2::Matrix2(FieldElem a, FieldElem b, FieldElem c, FieldElem d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

Matrix2 Matrix2::identity(BaseField f, int nvars) {
    return Matrix2(FieldElem::one(f, nvars), FieldElem::zero(f, nvars),
                   FieldElem::zero(f, nvars), FieldElem::one(f, nvars));
}

Matrix2 Matrix2::diag(const FieldElem& a, const FieldElem& d) {
    FieldElem z = FieldElem::zero(a.field(), a.nvars());
    return Matrix2(a, z, z, d);
}

FieldElem Matrix2::det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }
FieldElem Matrix2::trace() const { return at(0, 0) + at(1, 1); }

Matrix2 Matrix2::operator*(const Matrix2& o) const {
    return Matrix2(at(0, 0) * o.at(0, 0) + at(0, 1) * o.at(1, 0),
                   at(0, 0) * o.at(0, 1) + at(0, 1) * o.at(1, 1),
                   at(1, 0) * o.at(0, 0) + at(1, 1) * o.at(1, 0),
                   at(1, 0) * o.at(0, 1) + at(1, 1) * o.at(1, 1));
}

Matrix2 Matrix2::operator+(const Matrix2& o) const {
    return Matrix2(at(0, 0) + o.at(0, 0), at(0, 1) + o.at(0, 1),
                   at(1, 0) + o.at(1, 0), at(1, 1) + o.at(1, 1));
}

Matrix2 Matrix2::operator-(const Matrix2& o) const {
    return Matrix2(at(0, 0) - o.at(0, 0), at(0, 1) - o.at(0, 1),
                   at(1, 0) - o.at(1, 0), at(1, 1) - o.at(1, 1));
}

Matrix2 Matrix2::scaled(const FieldElem& s) const {
    return Matrix2(at(0, 0) * s, at(0, 1) * s, at(1, 0) * s, at(1, 1) * s);
}

Matrix2 Matrix2::inverse() const {
    FieldElem d = det();
    if (d.is_zero()) throw Error("singular matrix");
    return Matrix2(at(1, 1) / d, -at(0, 1) / d, -at(1, 0) / d, at(0, 0) / d);
}

std::array<FieldElem, 2> Matrix2::apply(const std::array<FieldElem, 2>& v) const {
    return {at(0, 0) * v[0] + at(0, 1) * v[1], at(1, 0) * v[0] + at(1, 1) * v[1]};
}

int Matrix2::compare(const Matrix2& a, const Matrix2& b) {
    for (int i = 0; i < 4; ++i) {
        int c = FieldElem::compare(a.e_[(size_t)i], b.e_[(size_t)i]);
        if (c != 0) return c;
    }
    return 0;
}

bool Matrix2::entries_in_R() const {
    for (const auto& x : e_)
        if (!x.in_local_ring()) return false;
    return true;
}

std::string Matrix2::to_string(const std::vector<std::string>& names) const {
    return "[[" + at(0, 0).to_string(names) + ", " + at(0, 1).to_string(names) + "], [" +
           at(1, 0).to_string(names) + ", " + at(1, 1).to_string(names) + "]]";
}

}  // namespace latticerect
