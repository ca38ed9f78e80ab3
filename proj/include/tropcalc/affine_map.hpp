#pragma once

#include "tropcalc/matrix.hpp"

namespace tc {

// x -> linear * x + translate, from R^source_rank to R^target_rank.
struct AffineMap {
    IntMat linear;  // target_rank x source_rank
    Vec translate;  // target_rank

    int source_rank() const { return linear.cols; }
    int target_rank() const { return linear.rows; }
    Vec apply(const Vec& x) const;
    // (*this) o g
    AffineMap compose(const AffineMap& g) const;
    bool operator==(const AffineMap& o) const { return linear == o.linear && translate == o.translate; }

    static AffineMap identity(int r);
    static AffineMap make(const IntMat& m, const Vec& t);
};

}  // namespace tc
