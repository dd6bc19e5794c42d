// Mat_R: objects are ranks of free R-modules, a morphism n -> m is an m x n
// matrix, tensor is the Kronecker product in row-major block order. End(I)
// is the ring itself via 1 x 1 matrices.

#pragma once

#include "matrix.hpp"
#include "smc.hpp"

namespace catrace {

class MatCategory {
  public:
    using Obj = int;
    using Mor = ExactMatrix;

    explicit MatCategory(RingTag ring) : ring_(std::move(ring)) {}

    const RingTag& ring() const { return ring_; }

    Mor identity(const Obj& n) const { return ExactMatrix::identity(ring_, n); }

    Mor compose(const Mor& f, const Mor& g) const  // f after g
    {
        if (f.cols() != g.rows()) throw std::invalid_argument("Mat compose: shape mismatch");
        return mat_mul(f, g);
    }

    Obj tensor_obj(const Obj& a, const Obj& b) const { return a * b; }

    Mor tensor_mor(const Mor& f, const Mor& g) const { return kronecker(f, g); }

    Obj unit() const { return 1; }

    // (x_a, x_b) |-> (x_b, x_a) under row-major labeling of basis pairs.
    Mor symmetry(const Obj& a, const Obj& b) const
    {
        ExactMatrix s(ring_, a * b, a * b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) s.at(j * a + i, i * b + j) = 1;
        return s;
    }

    bool equal(const Mor& f, const Mor& g) const { return f == g; }

    Obj dom(const Mor& f) const { return f.cols(); }
    Obj cod(const Mor& f) const { return f.rows(); }

  private:
    RingTag ring_;
};

// End(I) as a ring scalar.
inline Rat mat_scalar(const ExactMatrix& end_of_unit)
{
    if (end_of_unit.rows() != 1 || end_of_unit.cols() != 1)
        throw std::invalid_argument("not an endomorphism of the unit");
    return end_of_unit.at(0, 0);
}

// The standard pair for rank n: coevaluation is the vectorized identity.
inline DualPair<MatCategory> mat_dual_pair(const RingTag& ring, int n)
{
    ExactMatrix coev(ring, n * n, 1);
    for (int i = 0; i < n; ++i) coev.at(i * n + i, 0) = 1;
    return DualPair<MatCategory>{n, n, coev, coev.transpose()};
}

}  // namespace catrace
