#include "fet/ratmat.hpp"

#include <stdexcept>

namespace fet {

QMat QMat::identity(std::size_t n)
{
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMat QMat::transpose() const
{
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

QMat QMat::operator*(const QMat& other) const
{
    if (cols_ != other.rows_)
        throw std::invalid_argument("QMat multiply: shape mismatch");
    QMat out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rat& b = other(k, j);
                if (b != 0)
                    out(i, j) += a * b;
            }
        }
    return out;
}

std::vector<std::size_t> QMat::rref()
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = row;
        while (piv < rows_ && (*this)(piv, col) == 0)
            ++piv;
        if (piv == rows_)
            continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap((*this)(row, j), (*this)(piv, j));
        Rat inv = 1 / (*this)(row, col);
        for (std::size_t j = col; j < cols_; ++j)
            (*this)(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row)
                continue;
            Rat f = (*this)(i, col);
            if (f == 0)
                continue;
            for (std::size_t j = col; j < cols_; ++j)
                (*this)(i, j) -= f * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t QMat::rank() const
{
    QMat tmp = *this;
    return tmp.rref().size();
}

Rat QMat::det() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("QMat det: not square");
    QMat a = *this;
    Rat d = 1;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = col;
        while (piv < rows_ && a(piv, col) == 0)
            ++piv;
        if (piv == rows_)
            return Rat(0);
        if (piv != col) {
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(a(col, j), a(piv, j));
            d = -d;
        }
        d *= a(col, col);
        Rat inv = 1 / a(col, col);
        for (std::size_t i = col + 1; i < rows_; ++i) {
            Rat f = a(i, col) * inv;
            if (f == 0)
                continue;
            for (std::size_t j = col; j < cols_; ++j)
                a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

std::optional<QMat> QMat::inverse() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("QMat inverse: not square");
    QMat aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() >= cols_)
        return std::nullopt;
    QMat inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            inv(i, j) = aug(i, cols_ + j);
    return inv;
}

std::vector<std::vector<Rat>> QMat::kernel() const
{
    QMat r = *this;
    auto pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rat> v(cols_, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> QMat::solve(const std::vector<Rat>& b) const
{
    if (b.size() != rows_)
        throw std::invalid_argument("QMat solve: rhs size mismatch");
    QMat aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_)
        return std::nullopt; // inconsistent system
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug(i, cols_);
    return x;
}

} // namespace fet
