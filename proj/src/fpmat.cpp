#include "quandlekit/fpmat.hpp"

#include <sstream>

namespace qk {

int fp_norm(long long x, int p) {
    long long r = x % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

int fp_inv(int x, int p) {
    x = fp_norm(x, p);
    if (x == 0) throw DomainError("division by zero in F_p");
    // extended euclid
    int a = x, b = p, u = 1, v = 0;
    while (b) {
        int q = a / b;
        a -= q * b;
        std::swap(a, b);
        u -= q * v;
        std::swap(u, v);
    }
    return fp_norm(u, p);
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FpVec fp_add(const FpVec& x, const FpVec& y, int p) {
    FpVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = fp_norm(x[i] + y[i], p);
    return r;
}

FpVec fp_sub(const FpVec& x, const FpVec& y, int p) {
    FpVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = fp_norm(x[i] - y[i], p);
    return r;
}

FpVec fp_scale(int c, const FpVec& x, int p) {
    FpVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = fp_norm(static_cast<long long>(c) * x[i], p);
    return r;
}

bool fp_is_zero(const FpVec& x) {
    for (int v : x)
        if (v) return false;
    return true;
}

FpMat FpMat::identity(int p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat FpMat::from_rows(int p, const std::vector<FpVec>& rows) {
    int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    FpMat m(p, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
    return m;
}

FpVec FpMat::row(int r) const {
    FpVec v(cols);
    for (int c = 0; c < cols; ++c) v[c] = at(r, c);
    return v;
}

void FpMat::set_row(int r, const FpVec& v) {
    if (static_cast<int>(v.size()) != cols) throw DomainError("row length mismatch");
    for (int c = 0; c < cols; ++c) at(r, c) = fp_norm(v[c], p);
}

FpMat FpMat::operator*(const FpMat& o) const {
    if (cols != o.rows || p != o.p) throw DomainError("matrix product shape mismatch");
    FpMat r(p, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            int x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = fp_norm(r.at(i, j) + static_cast<long long>(x) * o.at(k, j), p);
        }
    return r;
}

FpVec FpMat::apply(const FpVec& v) const {
    if (static_cast<int>(v.size()) != cols) throw DomainError("matrix apply shape mismatch");
    FpVec r(rows, 0);
    for (int i = 0; i < rows; ++i) {
        long long s = 0;
        for (int j = 0; j < cols; ++j) s += static_cast<long long>(at(i, j)) * v[j];
        r[i] = fp_norm(s, p);
    }
    return r;
}

FpMat FpMat::operator+(const FpMat& o) const {
    if (rows != o.rows || cols != o.cols || p != o.p) throw DomainError("matrix sum shape mismatch");
    FpMat r(p, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = fp_norm(a[i] + o.a[i], p);
    return r;
}

FpMat FpMat::operator-(const FpMat& o) const {
    if (rows != o.rows || cols != o.cols || p != o.p) throw DomainError("matrix diff shape mismatch");
    FpMat r(p, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = fp_norm(a[i] - o.a[i], p);
    return r;
}

FpMat FpMat::transpose() const {
    FpMat r(p, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<int> FpMat::rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        int inv = fp_inv(at(r, c), p);
        for (int j = 0; j < cols; ++j) at(r, j) = fp_norm(static_cast<long long>(at(r, j)) * inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !at(i, c)) continue;
            int f = at(i, c);
            for (int j = 0; j < cols; ++j)
                at(i, j) = fp_norm(at(i, j) - static_cast<long long>(f) * at(r, j), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int FpMat::rank() const {
    FpMat copy = *this;
    return static_cast<int>(copy.rref().size());
}

std::optional<FpMat> FpMat::inverse() const {
    if (rows != cols) return std::nullopt;
    FpMat aug(p, rows, 2 * cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols + i) = 1;
    }
    auto pivots = aug.rref();
    if (static_cast<int>(pivots.size()) != rows) return std::nullopt;
    for (int k = 0; k < rows; ++k)
        if (pivots[k] != k) return std::nullopt;
    FpMat inv(p, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) inv.at(i, j) = aug.at(i, cols + j);
    return inv;
}

FpMat FpMat::nullspace() const {
    FpMat copy = *this;
    auto pivots = copy.rref();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<FpVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        FpVec v(cols, 0);
        v[c] = 1;
        // back-substitute: pivot row k has its pivot at pivots[k]
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = fp_norm(-copy.at(static_cast<int>(k), c), p);
        basis.push_back(v);
    }
    FpMat ns = FpMat::from_rows(p, basis);
    if (ns.rows == 0) ns.cols = cols;
    ns.rref();
    return ns;
}

std::string FpMat::str() const {
    std::ostringstream out;
    for (int i = 0; i < rows; ++i) {
        out << (i ? "\n" : "") << "[";
        for (int j = 0; j < cols; ++j) out << (j ? " " : "") << at(i, j);
        out << "]";
    }
    return out.str();
}

FpVec reduce_against(const FpMat& rows, const std::vector<int>& pivots, const FpVec& v) {
    FpVec r = v;
    for (size_t k = 0; k < pivots.size(); ++k) {
        int c = pivots[k];
        if (r[c] == 0) continue;
        int f = r[c];
        for (int j = 0; j < rows.cols; ++j)
            r[j] = fp_norm(r[j] - static_cast<long long>(f) * rows.at(static_cast<int>(k), j), rows.p);
    }
    return r;
}

std::optional<FpVec> coords_in_rowspace(const FpMat& rows, const std::vector<int>& pivots, const FpVec& v) {
    FpVec r = v;
    FpVec coords(pivots.size(), 0);
    for (size_t k = 0; k < pivots.size(); ++k) {
        int c = pivots[k];
        if (r[c] == 0) continue;
        int f = r[c];
        coords[k] = f;
        for (int j = 0; j < rows.cols; ++j)
            r[j] = fp_norm(r[j] - static_cast<long long>(f) * rows.at(static_cast<int>(k), j), rows.p);
    }
    if (!fp_is_zero(r)) return std::nullopt;
    return coords;
}

}  // namespace qk
