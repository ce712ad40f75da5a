#include "greenlift/ratlin.hpp"
#include "greenlift/errors.hpp"

#include <cstddef>
#include <stdexcept>

namespace greenlift {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

std::string format_rat(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

RatMat rat_identity(int n) {
    RatMat a(n, RatVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b[0].size();
    RatMat c(n, RatVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RatMat rat_transpose(const RatMat& a) {
    size_t n = a.size(), m = a[0].size();
    RatMat t(m, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
    return t;
}

RatVec rat_apply(const RatMat& a, const RatVec& v) {
    RatVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

Rat rat_dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat rat_det(RatMat a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rat inv = Rat(1) / a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] * inv;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// Gauss-Jordan on [a | rhs]; returns transformed rhs.
static RatMat solve_block(RatMat a, RatMat rhs) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw DegenerateForm("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat inv = Rat(1) / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (auto& x : rhs[col]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
            for (size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
        }
    }
    return rhs;
}

RatMat rat_inverse(const RatMat& a) {
    return solve_block(a, rat_identity((int)a.size()));
}

RatVec rat_solve(const RatMat& a, const RatVec& b) {
    RatMat rhs(b.size());
    for (size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
    RatMat x = solve_block(a, rhs);
    RatVec out(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = x[i][0];
    return out;
}

std::pair<int, int> sym_signature(const RatMat& g) {
    if (rat_det(g) == 0) throw DegenerateForm("degenerate symmetric form");
    RatMat a = g;
    size_t n = a.size();
    int pos = 0, neg = 0;
    for (size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            // find l>k with a[l][k] != 0 and add row/col l to k
            size_t l = k + 1;
            while (l < n && a[l][k] == 0) ++l;
            if (l == n) continue;  // row already cleared
            for (size_t j = 0; j < n; ++j) a[k][j] += a[l][j];
            for (size_t i = 0; i < n; ++i) a[i][k] += a[i][l];
        }
        if (a[k][k] > 0) ++pos; else ++neg;
        Rat inv = Rat(1) / a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] * inv;
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (a[k][j] == 0) continue;
            Rat f = a[k][j] * inv;
            for (size_t i = 0; i < n; ++i) a[i][j] -= f * a[i][k];
        }
    }
    return {pos, neg};
}

bool is_positive_definite(const RatMat& g) {
    size_t n = g.size();
    for (size_t k = 1; k <= n; ++k) {
        RatMat minor(k, RatVec(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) minor[i][j] = g[i][j];
        if (rat_det(minor) <= 0) return false;
    }
    return true;
}

std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    size_t ncols = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
        // reduce rows r..end in this column by repeated division
        while (true) {
            size_t piv = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (piv == rows.size() || abs(rows[i][col]) < abs(rows[piv][col])))
                    piv = i;
            if (piv == rows.size()) break;
            std::swap(rows[r], rows[piv]);
            if (rows[r][col] < 0)
                for (auto& x : rows[r]) x = -x;
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[r][col];
                if (rows[i][col] - q * rows[r][col] < 0) q -= 1;  // floor division
                for (size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] == 0) continue;
        // reduce entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            Int q = rows[i][col] / rows[r][col];
            if (rows[i][col] - q * rows[r][col] < 0) q -= 1;
            for (size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

RatMat rational_hnf(const std::vector<RatVec>& rows) {
    Int den = 1;
    for (const auto& r : rows)
        for (const auto& v : r) den = lcm(den, denominator(v));
    std::vector<std::vector<Int>> m;
    for (const auto& r : rows) {
        std::vector<Int> ir(r.size());
        for (size_t k = 0; k < r.size(); ++k) ir[k] = numerator(Rat(r[k] * den));
        m.push_back(std::move(ir));
    }
    auto h = hnf_rows(std::move(m));
    RatMat out;
    for (const auto& r : h) {
        RatVec rr(r.size());
        for (size_t k = 0; k < r.size(); ++k) rr[k] = Rat(r[k], den);
        out.push_back(std::move(rr));
    }
    return out;
}

RatVec coords_in_basis(const RatMat& basis, const RatVec& v) {
    return rat_solve(rat_transpose(basis), v);
}

bool all_integral(const RatVec& v) {
    for (const auto& x : v)
        if (denominator(x) != 1) return false;
    return true;
}

} // namespace greenlift
