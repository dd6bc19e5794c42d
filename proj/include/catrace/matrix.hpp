// Dense matrices over an exact ring tag, with the elimination routines the
// rest of the library is built on: rank/kernel/solve over fields, Smith
// normal form over Z. Dimensions stay at desk scale, so everything is the
// plain O(n^3) algorithm.

#pragma once

#include "exact.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <vector>

namespace catrace {

class ExactMatrix {
  public:
    ExactMatrix() : ring_(RingTag::Z()), rows_(0), cols_(0) {}

    ExactMatrix(RingTag ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0))
    {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    }

    static ExactMatrix zero(RingTag ring, int rows, int cols) { return {std::move(ring), rows, cols}; }

    static ExactMatrix identity(RingTag ring, int n)
    {
        ExactMatrix m(std::move(ring), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static ExactMatrix from_rows(RingTag ring, std::vector<std::vector<Rat>> rows)
    {
        int r = int(rows.size());
        int c = r == 0 ? 0 : int(rows[0].size());
        ExactMatrix m(ring, r, c);
        for (int i = 0; i < r; ++i) {
            if (int(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = ring_normalize(ring, rows[i][j]);
        }
        return m;
    }

    static ExactMatrix from_ints(RingTag ring, std::vector<std::vector<long long>> rows)
    {
        std::vector<std::vector<Rat>> conv;
        conv.reserve(rows.size());
        for (auto& r : rows) conv.emplace_back(r.begin(), r.end());
        return from_rows(std::move(ring), std::move(conv));
    }

    const RingTag& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    void set(int i, int j, const Rat& v) { at(i, j) = ring_normalize(ring_, v); }

    bool operator==(const ExactMatrix& o) const
    {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Rat& v) { return v == 0; });
    }

    bool is_identity() const
    {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    ExactMatrix transpose() const
    {
        ExactMatrix t(ring_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    ExactMatrix map(const std::function<Rat(const Rat&)>& f, RingTag target) const
    {
        ExactMatrix t(std::move(target), rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.set(i, j, f(at(i, j)));
        return t;
    }

  private:
    RingTag ring_;
    int rows_, cols_;
    std::vector<Rat> a_;
};

inline void require_same_ring(const ExactMatrix& a, const ExactMatrix& b)
{
    if (!(a.ring() == b.ring()))
        throw std::invalid_argument("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
}

inline ExactMatrix mat_add(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("shape mismatch in mat_add");
    ExactMatrix c(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c.at(i, j) = ring_add(a.ring(), a.at(i, j), b.at(i, j));
    return c;
}

inline ExactMatrix mat_sub(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("shape mismatch in mat_sub");
    ExactMatrix c(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c.at(i, j) = ring_sub(a.ring(), a.at(i, j), b.at(i, j));
    return c;
}

inline ExactMatrix mat_scale(const Rat& s, const ExactMatrix& a)
{
    ExactMatrix c(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c.at(i, j) = ring_mul(a.ring(), s, a.at(i, j));
    return c;
}

inline ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in mat_mul");
    ExactMatrix c(a.ring(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j) == 0) continue;
                c.at(i, j) = ring_add(a.ring(), c.at(i, j), ring_mul(a.ring(), aik, b.at(k, j)));
            }
        }
    return c;
}

// Kronecker product, blocks in row-major order of `a`: entry
// ((ia,ib),(ja,jb)) = a(ia,ja) * b(ib,jb) at (ia*b.rows+ib, ja*b.cols+jb).
inline ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    ExactMatrix c(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const Rat& v = a.at(ia, ja);
            if (v == 0) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    c.at(ia * b.rows() + ib, ja * b.cols() + jb) =
                        ring_mul(a.ring(), v, b.at(ib, jb));
        }
    return c;
}

inline Rat mat_trace(const ExactMatrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("trace of non-square matrix");
    Rat t = 0;
    for (int i = 0; i < a.rows(); ++i) t = ring_add(a.ring(), t, a.at(i, i));
    return t;
}

namespace detail {

// Row-echelon reduction in place; returns pivot columns. Field rings only.
inline std::vector<int> echelonize(ExactMatrix& m)
{
    if (!m.ring().is_field())
        throw std::invalid_argument("elimination needs a field, got " + m.ring().name());
    const RingTag& r = m.ring();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rat inv = ring_inv(r, m.at(row, col));
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = ring_mul(r, inv, m.at(row, j));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j)
                m.at(i, j) = ring_sub(r, m.at(i, j), ring_mul(r, f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline int rank_over_field(const ExactMatrix& a)
{
    ExactMatrix m = a;
    return int(detail::echelonize(m).size());
}

// Columns span ker(a); count = cols - rank.
inline ExactMatrix kernel_basis(const ExactMatrix& a)
{
    ExactMatrix m = a;
    std::vector<int> pivots = detail::echelonize(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    ExactMatrix k(a.ring(), a.cols(), int(free_cols.size()));
    for (size_t idx = 0; idx < free_cols.size(); ++idx) {
        int fc = free_cols[idx];
        k.at(fc, int(idx)) = 1;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            k.at(pivots[pr], int(idx)) = ring_neg(a.ring(), m.at(int(pr), fc));
    }
    return k;
}

// Solves a * x = b columnwise over a field; empty when inconsistent.
inline std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.rows() != b.rows()) throw std::invalid_argument("shape mismatch in solve");
    const RingTag& r = a.ring();
    ExactMatrix aug(r, a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
    }
    std::vector<int> pivots = detail::echelonize(aug);
    for (int c : pivots)
        if (c >= a.cols()) return std::nullopt;
    ExactMatrix x(r, a.cols(), b.cols());
    for (size_t pr = 0; pr < pivots.size(); ++pr)
        for (int j = 0; j < b.cols(); ++j)
            x.at(pivots[pr], j) = aug.at(int(pr), a.cols() + j);
    return x;
}

inline std::optional<ExactMatrix> inverse(const ExactMatrix& a)
{
    if (a.rows() != a.cols()) return std::nullopt;
    auto x = solve(a, ExactMatrix::identity(a.ring(), a.rows()));
    if (!x) return std::nullopt;
    if (!mat_mul(a, *x).is_identity()) return std::nullopt;
    return x;
}

inline Rat determinant(const ExactMatrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    // Over Z we eliminate in Q and the result is integral.
    RingTag field = a.ring().kind == RingTag::Kind::integers ? RingTag::Q() : a.ring();
    if (!field.is_field()) throw std::invalid_argument("determinant needs a field or Z");
    ExactMatrix m = a.map([](const Rat& v) { return v; }, field);
    const int n = m.rows();
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
            det = ring_neg(field, det);
        }
        det = ring_mul(field, det, m.at(col, col));
        Rat inv = ring_inv(field, m.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = ring_mul(field, inv, m.at(i, col));
            for (int j = col; j < n; ++j)
                m.at(i, j) = ring_sub(field, m.at(i, j), ring_mul(field, f, m.at(col, j)));
        }
    }
    return det;
}

struct SmithNormalForm {
    ExactMatrix u, d, v;  // u * a * v = d, u and v unimodular
};

// Smith normal form by elementary operations, pivot = minimal nonzero
// absolute value. Diagonal of d is nonnegative with d1 | d2 | ...
inline SmithNormalForm smith_normal_form(const ExactMatrix& a)
{
    if (a.ring().kind != RingTag::Kind::integers)
        throw std::invalid_argument("smith_normal_form needs ring Z");
    const int m = a.rows(), n = a.cols();
    std::vector<std::vector<Int>> d(m, std::vector<Int>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = numerator(a.at(i, j));
    std::vector<std::vector<Int>> u(m, std::vector<Int>(m)), v(n, std::vector<Int>(n));
    for (int i = 0; i < m; ++i) u[i][i] = 1;
    for (int j = 0; j < n; ++j) v[j][j] = 1;

    auto row_swap = [&](int i1, int i2) { std::swap(d[i1], d[i2]); std::swap(u[i1], u[i2]); };
    auto col_swap = [&](int j1, int j2) {
        for (int i = 0; i < m; ++i) std::swap(d[i][j1], d[i][j2]);
        for (int i = 0; i < n; ++i) std::swap(v[i][j1], v[i][j2]);
    };
    auto row_addmul = [&](int dst, int src, const Int& q) {  // row dst += q * row src
        for (int j = 0; j < n; ++j) d[dst][j] += q * d[src][j];
        for (int j = 0; j < m; ++j) u[dst][j] += q * u[src][j];
    };
    auto col_addmul = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < m; ++i) d[i][dst] += q * d[i][src];
        for (int i = 0; i < n; ++i) v[i][dst] += q * v[i][src];
    };
    auto row_negate = [&](int i) {
        for (int j = 0; j < n; ++j) d[i][j] = -d[i][j];
        for (int j = 0; j < m; ++j) u[i][j] = -u[i][j];
    };

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            Int best = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    if (d[i][j] == 0) continue;
                    Int mag = abs(d[i][j]);
                    if (pi < 0 || mag < best) { pi = i; pj = j; best = mag; }
                }
            if (pi < 0) break;  // block is zero
            if (pi != t) row_swap(pi, t);
            if (pj != t) col_swap(pj, t);

            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (d[i][t] == 0) continue;
                Int q = d[i][t] / d[t][t];
                if (q != 0) row_addmul(i, t, -q);
                if (d[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (d[t][j] == 0) continue;
                Int q = d[t][j] / d[t][t];
                if (q != 0) col_addmul(j, t, -q);
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;  // remainder became the new smaller pivot candidate

            // Enforce the divisibility chain before moving on.
            bool divides_all = true;
            for (int i = t + 1; i < m && divides_all; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        row_addmul(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (t < m && d[t][t] < 0) row_negate(t);
    }

    SmithNormalForm out{ExactMatrix(RingTag::Z(), m, m), ExactMatrix(RingTag::Z(), m, n),
                        ExactMatrix(RingTag::Z(), n, n)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.u.at(i, j) = Rat(u[i][j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.d.at(i, j) = Rat(d[i][j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.v.at(i, j) = Rat(v[i][j]);
    return out;
}

// Basis of the kernel lattice of an integer matrix (a saturated sublattice),
// read off from the Smith normal form: columns of V whose invariant factor
// vanishes.
inline ExactMatrix kernel_basis_integer(const ExactMatrix& a)
{
    auto snf = smith_normal_form(a);
    std::vector<int> zero_cols;
    for (int j = 0; j < a.cols(); ++j) {
        bool zero = j >= std::min(a.rows(), a.cols()) || snf.d.at(j, j) == 0;
        if (zero) zero_cols.push_back(j);
    }
    ExactMatrix k(RingTag::Z(), a.cols(), int(zero_cols.size()));
    for (size_t c = 0; c < zero_cols.size(); ++c)
        for (int i = 0; i < a.cols(); ++i) k.at(i, int(c)) = snf.v.at(i, zero_cols[c]);
    return k;
}

// ---- text format -----------------------------------------------------------
//
// First line: `rows cols ring` with ring in {Z, Q, Zm:<m>}; then `rows` lines
// of space-separated entries (`p` or `p/q`). `#` starts a comment line.

inline void print_matrix(std::ostream& os, const ExactMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << ' ' << m.ring().name() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << scalar_str(m.at(i, j));
        os << '\n';
    }
}

inline std::string matrix_str(const ExactMatrix& m)
{
    std::ostringstream os;
    print_matrix(os, m);
    return os.str();
}

inline ExactMatrix parse_matrix(std::istream& is)
{
    auto next_line = [&is](std::string& line) {
        while (std::getline(is, line)) {
            auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw std::invalid_argument("empty matrix input");
    std::istringstream head(line);
    int rows, cols;
    std::string ring_name;
    if (!(head >> rows >> cols >> ring_name))
        throw std::invalid_argument("bad matrix header: " + line);
    RingTag ring = RingTag::parse(ring_name);
    ExactMatrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!next_line(line)) throw std::invalid_argument("matrix truncated");
        std::istringstream row(line);
        std::string tok;
        for (int j = 0; j < cols; ++j) {
            if (!(row >> tok)) throw std::invalid_argument("short matrix row");
            m.at(i, j) = scalar_parse(ring, tok);
        }
    }
    return m;
}

}  // namespace catrace
