#include "mcp/preconditioner.hpp"

#include <cmath>
#include <stdexcept>

namespace mcp {

const char* to_string(PrecondKind kind) {
    switch (kind) {
        case PrecondKind::Identity: return "none";
        case PrecondKind::Jacobi: return "jacobi";
        case PrecondKind::ILU0: return "ilu0";
        case PrecondKind::BlockJacobiILU0: return "bjacobi";
    }
    return "unknown";
}

Preconditioner Preconditioner::identity(std::size_t n) {
    Preconditioner p;
    p.kind_ = PrecondKind::Identity;
    p.n_ = n;
    return p;
}

Preconditioner Preconditioner::jacobi(const SparseMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("jacobi: matrix not square");
    Preconditioner p;
    p.kind_ = PrecondKind::Jacobi;
    p.n_ = a.n_rows;
    p.diagonal_.assign(a.n_rows, 0.0);
    for (std::size_t i = 0; i < a.n_rows; ++i)
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            if (a.col_indices[k] == i) p.diagonal_[i] = a.values[k];
    for (double d : p.diagonal_)
        if (d == 0.0) throw std::invalid_argument("jacobi: zero diagonal entry");
    return p;
}

Preconditioner::IluFactor Preconditioner::factor_ilu0(const SparseMatrix& a,
                                                      std::size_t row_begin,
                                                      std::size_t& substitutions) {
    const std::size_t n = a.n_rows;
    IluFactor f;
    f.lu = a;
    f.row_begin = row_begin;
    f.diag.assign(n, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            if (a.col_indices[k] == i) f.diag[i] = k;
    for (std::size_t i = 0; i < n; ++i)
        if (f.diag[i] == static_cast<std::size_t>(-1))
            throw std::invalid_argument("ilu0: structurally zero diagonal");

    const double pivot_substitute = 1e-12 * a.norm_inf();
    // column -> position map for the row being eliminated
    std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
    auto& lu = f.lu;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = lu.row_offsets[i]; k < lu.row_offsets[i + 1]; ++k)
            pos[lu.col_indices[k]] = k;
        for (std::size_t k = lu.row_offsets[i]; k < lu.row_offsets[i + 1]; ++k) {
            const std::size_t c = lu.col_indices[k];
            if (c >= i) break;
            double pivot = lu.values[f.diag[c]];
            if (pivot == 0.0) {
                pivot = pivot_substitute != 0.0 ? pivot_substitute : 1e-12;
                lu.values[f.diag[c]] = pivot;
                ++substitutions;
            }
            const double factor = lu.values[k] / pivot;
            lu.values[k] = factor;
            for (std::size_t kk = f.diag[c] + 1; kk < lu.row_offsets[c + 1]; ++kk) {
                const std::size_t p = pos[lu.col_indices[kk]];
                if (p != static_cast<std::size_t>(-1))
                    lu.values[p] -= factor * lu.values[kk];
            }
        }
        for (std::size_t k = lu.row_offsets[i]; k < lu.row_offsets[i + 1]; ++k)
            pos[lu.col_indices[k]] = static_cast<std::size_t>(-1);
        if (lu.values[f.diag[i]] == 0.0) {
            lu.values[f.diag[i]] = pivot_substitute != 0.0 ? pivot_substitute : 1e-12;
            ++substitutions;
        }
    }
    return f;
}

Preconditioner Preconditioner::ilu0(const SparseMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("ilu0: matrix not square");
    Preconditioner p;
    p.kind_ = PrecondKind::ILU0;
    p.n_ = a.n_rows;
    p.factors_.push_back(factor_ilu0(a, 0, p.pivot_substitutions_));
    return p;
}

Preconditioner Preconditioner::block_jacobi_ilu0(const SparseMatrix& a,
                                                 std::size_t block_count) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("bjacobi: matrix not square");
    if (block_count == 0) throw std::invalid_argument("bjacobi: block_count must be positive");
    const std::size_t n = a.n_rows;
    block_count = std::min(block_count, n ? n : std::size_t{1});
    Preconditioner p;
    p.kind_ = PrecondKind::BlockJacobiILU0;
    p.n_ = n;
    // contiguous row ranges of near-equal size
    const std::size_t base = n / block_count;
    const std::size_t extra = n % block_count;
    std::size_t begin = 0;
    for (std::size_t b = 0; b < block_count; ++b) {
        const std::size_t size = base + (b < extra ? 1 : 0);
        if (size == 0) continue;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = begin + i;
        SparseMatrix block = extract_submatrix(a, idx, idx);
        p.factors_.push_back(factor_ilu0(block, begin, p.pivot_substitutions_));
        begin += size;
    }
    return p;
}

Preconditioner Preconditioner::build(PrecondKind kind, const SparseMatrix& a,
                                     std::size_t block_count) {
    switch (kind) {
        case PrecondKind::Identity: return identity(a.n_rows);
        case PrecondKind::Jacobi: return jacobi(a);
        case PrecondKind::ILU0: return ilu0(a);
        case PrecondKind::BlockJacobiILU0: return block_jacobi_ilu0(a, block_count);
    }
    throw std::invalid_argument("unknown preconditioner kind");
}

void Preconditioner::ilu_solve(const IluFactor& f, const double* r, double* x) {
    const SparseMatrix& lu = f.lu;
    const std::size_t n = lu.n_rows;
    // L y = r with unit diagonal
    for (std::size_t i = 0; i < n; ++i) {
        double s = r[i];
        for (std::size_t k = lu.row_offsets[i]; k < f.diag[i]; ++k)
            s -= lu.values[k] * x[lu.col_indices[k]];
        x[i] = s;
    }
    // U x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = f.diag[ii] + 1; k < lu.row_offsets[ii + 1]; ++k)
            s -= lu.values[k] * x[lu.col_indices[k]];
        x[ii] = s / lu.values[f.diag[ii]];
    }
}

Vector Preconditioner::apply(const Vector& r) const {
    if (r.size() != n_) throw std::invalid_argument("preconditioner: dimension mismatch");
    switch (kind_) {
        case PrecondKind::Identity:
            return r;
        case PrecondKind::Jacobi: {
            Vector x(n_);
            for (std::size_t i = 0; i < n_; ++i) x[i] = r[i] / diagonal_[i];
            return x;
        }
        case PrecondKind::ILU0:
        case PrecondKind::BlockJacobiILU0: {
            Vector x(n_, 0.0);
            for (const IluFactor& f : factors_)
                ilu_solve(f, r.data() + f.row_begin, x.data() + f.row_begin);
            return x;
        }
    }
    return r;
}

}  // namespace mcp
