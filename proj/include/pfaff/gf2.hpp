#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pfaff {

// Fixed-width bit vector packed into 64-bit words.  Trailing bits of the last
// word are kept zero so that equality and popcount work on whole words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static BitVec ones(std::size_t n) {
        BitVec v(n);
        for (std::size_t i = 0; i < n; ++i) v.set(i);
        return v;
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool value = true) {
        if (i >= size_) throw std::out_of_range("BitVec::set: index out of range");
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) {
        if (i >= size_) throw std::out_of_range("BitVec::flip: index out of range");
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    BitVec& operator^=(const BitVec& other) {
        if (other.size_ != size_) throw std::invalid_argument("BitVec: size mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    BitVec& operator&=(const BitVec& other) {
        if (other.size_ != size_) throw std::invalid_argument("BitVec: size mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        return *this;
    }

    bool operator==(const BitVec& other) const = default;

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    // Parity of the AND with `other`, i.e. the GF(2) dot product.
    bool dot(const BitVec& other) const {
        if (other.size_ != size_) throw std::invalid_argument("BitVec: size mismatch");
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    std::optional<std::size_t> first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return std::nullopt;
    }

    std::vector<std::size_t> set_bits() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                out.push_back((w << 6) + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense matrix over GF(2); rows of uniform width.
struct BitMatrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    BitMatrix() = default;
    BitMatrix(std::size_t nrows, std::size_t ncols) : cols(ncols), rows(nrows, BitVec(ncols)) {}

    std::size_t row_count() const { return rows.size(); }

    void append_row(BitVec row) {
        if (row.size() != cols) throw std::invalid_argument("BitMatrix: row width mismatch");
        rows.push_back(std::move(row));
    }

    BitMatrix transposed() const {
        BitMatrix t(cols, rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c : rows[r].set_bits()) t.rows[c].set(r);
        return t;
    }
};

struct LinearSolution {
    BitVec particular;            // one solution of Mx = b
    std::vector<BitVec> kernel;   // basis of the solution space of Mx = 0
};

namespace detail {

// Reduced row echelon form of [M | b], lowest-index pivot columns first.
// Returns pivot column per pivot row; `rhs` may be null for homogeneous work.
inline std::vector<std::size_t> rref(std::vector<BitVec>& rows, std::vector<bool>* rhs, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
        std::size_t r = pivot_row;
        while (r < rows.size() && !rows[r].get(c)) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[pivot_row], rows[r]);
        if (rhs) {
            bool tmp = (*rhs)[pivot_row];
            (*rhs)[pivot_row] = (*rhs)[r];
            (*rhs)[r] = tmp;
        }
        for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
            if (r2 != pivot_row && rows[r2].get(c)) {
                rows[r2] ^= rows[pivot_row];
                if (rhs) (*rhs)[r2] = (*rhs)[r2] != (*rhs)[pivot_row];
            }
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }
    return pivot_cols;
}

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
    std::vector<BitVec> rows = m.rows;
    return detail::rref(rows, nullptr, m.cols).size();
}

// Solves Mx = b.  Returns std::nullopt when inconsistent, otherwise one
// particular solution (free variables zero) and a kernel basis indexed by
// ascending free column.  Pivoting is by lowest column index, so results are
// reproducible.
inline std::optional<LinearSolution> solve(const BitMatrix& m, const BitVec& b) {
    if (b.size() != m.row_count()) throw std::invalid_argument("solve: rhs length != row count");
    std::vector<BitVec> rows = m.rows;
    std::vector<bool> rhs(m.row_count());
    for (std::size_t r = 0; r < m.row_count(); ++r) rhs[r] = b.get(r);

    const std::vector<std::size_t> pivot_cols = detail::rref(rows, &rhs, m.cols);
    for (std::size_t r = pivot_cols.size(); r < rows.size(); ++r)
        if (rhs[r]) return std::nullopt;

    LinearSolution sol;
    sol.particular = BitVec(m.cols);
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        if (rhs[r]) sol.particular.set(pivot_cols[r]);

    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(m.cols);
        v.set(f);
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            if (rows[r].get(f)) v.set(pivot_cols[r]);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

inline std::vector<BitVec> kernel_basis(const BitMatrix& m) {
    auto sol = solve(m, BitVec(m.row_count()));
    return std::move(sol->kernel);  // homogeneous system is always consistent
}

// Some x with Mx = 0 and c.x = 1, if one exists.  None exactly when c is
// orthogonal to the kernel, i.e. lies in the row space of M.
inline std::optional<BitVec> kernel_functional_witness(const BitMatrix& m, const BitVec& c) {
    if (c.size() != m.cols) throw std::invalid_argument("kernel_functional_witness: functional length != column count");
    for (const BitVec& v : kernel_basis(m))
        if (c.dot(v)) return v;
    return std::nullopt;
}

}  // namespace pfaff
