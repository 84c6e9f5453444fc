#pragma once

// Dense matrices over exact scalars (arbitrary-precision integers and
// rationals) plus the integer normal forms everything else is built on:
// Smith normal form with transforms, row-style Hermite normal form,
// fraction-free determinants, and exact rational elimination.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mpk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// floor division (cpp_int's operator/ truncates toward zero)
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }
    Mat(int rows, int cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows < 0 || cols < 0 || data_.size() != static_cast<std::size_t>(rows) * cols)
            throw std::invalid_argument("Mat: entry count does not match dimensions");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(int i, int j) { return data_[idx(i, j)]; }
    const T& operator()(int i, int j) const { return data_[idx(i, j)]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row a += c * row b
    void add_row(int a, int b, const T& c) {
        for (int j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
    }
    // col a += c * col b
    void add_col(int a, int b, const T& c) {
        for (int i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
    }
    void scale_row(int a, const T& c) {
        for (int j = 0; j < cols_; ++j) (*this)(a, j) *= c;
    }
    void negate_row(int a) { scale_row(a, T(-1)); }
    void negate_col(int a) {
        for (int i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat col(int j) const { return select_cols({j}); }

    Mat select_cols(const std::vector<int>& js) const {
        Mat r(rows_, static_cast<int>(js.size()));
        for (int i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < js.size(); ++k) r(i, static_cast<int>(k)) = (*this)(i, js[k]);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != T(0)) return false;
        return true;
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("Mat index");
        return static_cast<std::size_t>(i) * cols_ + j;
    }
    int rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Mat mul: shape mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T(0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
Mat<T> hstack(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat<T> c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

template <class T>
Mat<T> vstack(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
    Mat<T> c(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Smith normal form.  D = U * M * V with U, V unimodular, D diagonal,
// d_1 | d_2 | ... and every d_i >= 0.  Pivot choice: smallest nonzero
// absolute value in the trailing block, ties broken by lowest (row, col),
// which makes the transform sequence (and hence U, V) deterministic.

struct SmithResult {
    IntMatrix u, d, v;

    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        const int n = std::min(d.rows(), d.cols());
        for (int i = 0; i < n; ++i) out.push_back(d(i, i));
        return out;
    }
    int rank() const {
        int r = 0;
        for (const Int& x : diagonal())
            if (x != 0) ++r;
        return r;
    }
};

inline SmithResult smith_normal_form(IntMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    int t = 0;
    const int steps = std::min(rows, cols);
    while (t < steps) {
        int pr = -1, pc = -1;
        Int best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m(i, j) == 0) continue;
                Int a = abs(m(i, j));
                if (pr < 0 || a < best) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // trailing block is zero
        m.swap_rows(t, pr);
        u.swap_rows(t, pr);
        m.swap_cols(t, pc);
        v.swap_cols(t, pc);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (m(i, t) == 0) continue;
            Int q = m(i, t) / m(t, t);
            if (q != 0) {
                m.add_row(i, t, -q);
                u.add_row(i, t, -q);
            }
            if (m(i, t) != 0) clean = false;  // remainder < |pivot|, re-select
        }
        for (int j = t + 1; j < cols; ++j) {
            if (m(t, j) == 0) continue;
            Int q = m(t, j) / m(t, t);
            if (q != 0) {
                m.add_col(j, t, -q);
                v.add_col(j, t, -q);
            }
            if (m(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility fix-up: fold a row containing a non-multiple into row t
        bool divides = true;
        for (int i = t + 1; i < rows && divides; ++i)
            for (int j = t + 1; j < cols && divides; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    m.add_row(t, i, Int(1));
                    u.add_row(t, i, Int(1));
                    divides = false;
                }
        if (!divides) continue;

        if (m(t, t) < 0) {
            m.negate_row(t);
            u.negate_row(t);
        }
        ++t;
    }
    return {std::move(u), std::move(m), std::move(v)};
}

// ---------------------------------------------------------------------------
// Row-style Hermite normal form.  H = U * M with U unimodular; pivots
// positive, strictly to the right as rows descend, entries above each pivot
// reduced into [0, pivot).  H is the canonical basis of the row lattice.

struct HermiteResult {
    IntMatrix h, u;

    int rank() const {
        int r = 0;
        for (int i = 0; i < h.rows(); ++i) {
            bool nz = false;
            for (int j = 0; j < h.cols(); ++j)
                if (h(i, j) != 0) {
                    nz = true;
                    break;
                }
            if (nz) ++r;
        }
        return r;
    }
};

inline HermiteResult hermite_normal_form(IntMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    IntMatrix u = IntMatrix::identity(rows);
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int p = -1;
        Int best;
        for (int i = r; i < rows; ++i) {
            if (m(i, j) == 0) continue;
            Int a = abs(m(i, j));
            if (p < 0 || a < best) {
                best = a;
                p = i;
            }
        }
        if (p < 0) continue;
        m.swap_rows(r, p);
        u.swap_rows(r, p);

        bool again = true;
        while (again) {
            again = false;
            for (int i = r + 1; i < rows; ++i) {
                if (m(i, j) == 0) continue;
                Int q = m(i, j) / m(r, j);
                if (q != 0) {
                    m.add_row(i, r, -q);
                    u.add_row(i, r, -q);
                }
                if (m(i, j) != 0) {  // euclid: bring the smaller remainder up
                    m.swap_rows(r, i);
                    u.swap_rows(r, i);
                    again = true;
                }
            }
        }
        if (m(r, j) < 0) {
            m.negate_row(r);
            u.negate_row(r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = floor_div(m(i, j), m(r, j));
            if (q != 0) {
                m.add_row(i, r, -q);
                u.add_row(i, r, -q);
            }
        }
        ++r;
    }
    return {std::move(m), std::move(u)};
}

// Fraction-free (Bareiss) determinant; empty matrix has determinant 1.
inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    const int n = m.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

inline int rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

// Solve B Y = C over the integers (B arbitrary); nullopt when some column of
// C is not an integer combination of the columns of B.
inline std::optional<IntMatrix> integer_solve(const IntMatrix& b, const IntMatrix& c) {
    if (b.rows() != c.rows()) throw std::invalid_argument("integer_solve: shape mismatch");
    SmithResult s = smith_normal_form(b);
    const int r = s.rank();
    IntMatrix w = s.u * c;  // need D z = w with z = V^{-1} y
    IntMatrix z(b.cols(), c.cols());
    for (int j = 0; j < c.cols(); ++j) {
        for (int i = 0; i < b.rows(); ++i) {
            if (i < r) {
                if (w(i, j) % s.d(i, i) != 0) return std::nullopt;
                z(i, j) = w(i, j) / s.d(i, i);
            } else if (w(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * z;
}

// Column lattices in Z^n.  The canonical basis is the row-HNF of the
// transpose, transposed back and stripped of zero columns: two generating
// sets span the same lattice iff these agree.
inline IntMatrix lattice_basis(const IntMatrix& columns) {
    HermiteResult h = hermite_normal_form(columns.transpose());
    const int r = h.rank();
    IntMatrix basis(columns.rows(), r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < columns.rows(); ++j) basis(j, i) = h.h(i, j);
    return basis;
}

inline bool lattices_equal(const IntMatrix& gens_a, const IntMatrix& gens_b) {
    return lattice_basis(gens_a) == lattice_basis(gens_b);
}

inline bool lattice_contains(const IntMatrix& gens, const IntMatrix& vectors) {
    return integer_solve(gens, vectors).has_value();
}

// Basis of {x : M x = 0} as columns, from the SNF transform V: the columns
// of V past the rank span the kernel lattice (saturated, V unimodular).
inline IntMatrix integer_kernel_basis(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    const int r = s.rank();
    std::vector<int> js;
    for (int j = r; j < m.cols(); ++j) js.push_back(j);
    return s.v.select_cols(js);
}

// ---------------------------------------------------------------------------
// Exact rational elimination: reduced row echelon form, rank, kernel bases
// and column-space solves.  Pivot choice is the first nonzero entry, so all
// outputs are deterministic.

struct RrefResult {
    RatMatrix m;
    std::vector<int> pivot_cols;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

inline RrefResult rref(RatMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, j) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        m.swap_rows(r, p);
        Rat inv = Rat(1) / m(r, j);
        m.scale_row(r, inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, j) == 0) continue;
            m.add_row(i, r, -m(i, j));
        }
        pivots.push_back(j);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline int rat_rank(const RatMatrix& m) { return rref(m).rank(); }

// Columns span {x : M x = 0}; one basis vector per free column.
inline RatMatrix rat_kernel_basis(const RatMatrix& m) {
    RrefResult r = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int j : r.pivot_cols) is_pivot[j] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RatMatrix basis(cols, static_cast<int>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        int f = free_cols[k];
        basis(f, static_cast<int>(k)) = 1;
        for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
            basis(r.pivot_cols[pi], static_cast<int>(k)) = -r.m(static_cast<int>(pi), f);
    }
    return basis;
}

// Solve A X = B exactly; nullopt if some column of B is outside col-span(A).
// When A has full column rank the solution is unique.
inline std::optional<RatMatrix> rat_solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("rat_solve: shape mismatch");
    RrefResult r = rref(hstack(a, b));
    RatMatrix x(a.cols(), b.cols());
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi) {
        int pc = r.pivot_cols[pi];
        if (pc >= a.cols()) return std::nullopt;  // pivot in the B block: inconsistent
        for (int j = 0; j < b.cols(); ++j) x(pc, j) = r.m(static_cast<int>(pi), a.cols() + j);
    }
    return x;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline std::string to_string(const IntMatrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += " ";
            s += m(i, j).str();
        }
    }
    s += "]";
    return s;
}

}  // namespace mpk
