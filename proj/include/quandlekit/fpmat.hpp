#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quandlekit/errors.hpp"

namespace qk {

using FpVec = std::vector<int>;  // entries in [0, p)

// Dense matrix over the prime field F_p.  Small sizes only; everything here
// is plain Gaussian elimination with deterministic pivoting.
struct FpMat {
    int p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<int> a;  // row-major

    FpMat() = default;
    FpMat(int p_, int rows_, int cols_) : p(p_), rows(rows_), cols(cols_), a(static_cast<size_t>(rows_) * cols_, 0) {}

    int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static FpMat identity(int p, int n);
    static FpMat from_rows(int p, const std::vector<FpVec>& rows);

    FpVec row(int r) const;
    void set_row(int r, const FpVec& v);

    FpMat operator*(const FpMat& o) const;
    FpVec apply(const FpVec& v) const;  // matrix * column vector
    FpMat operator+(const FpMat& o) const;
    FpMat operator-(const FpMat& o) const;
    bool operator==(const FpMat& o) const { return p == o.p && rows == o.rows && cols == o.cols && a == o.a; }

    FpMat transpose() const;

    // Reduced row echelon form in place; returns the pivot columns.
    std::vector<int> rref();
    int rank() const;
    std::optional<FpMat> inverse() const;
    // Basis of the right nullspace, one vector per row, echelonized.
    FpMat nullspace() const;

    std::string str() const;
};

int fp_inv(int x, int p);
int fp_norm(long long x, int p);

FpVec fp_add(const FpVec& x, const FpVec& y, int p);
FpVec fp_sub(const FpVec& x, const FpVec& y, int p);
FpVec fp_scale(int c, const FpVec& x, int p);
bool fp_is_zero(const FpVec& x);

// Solve rref_rows * c = v for membership in a row space: reduces v against
// echelonized rows, returning the remainder (zero iff v is in the span).
FpVec reduce_against(const FpMat& echelon_rows, const std::vector<int>& pivots, const FpVec& v);

// Coordinates of v in the row basis, if v lies in the span.
std::optional<FpVec> coords_in_rowspace(const FpMat& echelon_rows, const std::vector<int>& pivots, const FpVec& v);

bool is_prime(int n);

}  // namespace qk
