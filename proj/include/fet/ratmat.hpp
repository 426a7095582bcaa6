#pragma once

// Dense exact-rational linear algebra: row reduction, rank, determinant,
// inverse, kernel and linear solves.  Everything here is deterministic and
// tolerance-free; it backs the unisolvence / exactness checks.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace fet {

using Rat = mpq_class;

class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static QMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMat transpose() const;
    QMat operator*(const QMat& other) const;
    bool operator==(const QMat& other) const = default;

    // In-place reduction to reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();

    std::size_t rank() const;
    Rat det() const;                       // square only
    std::optional<QMat> inverse() const;   // nullopt if singular

    // Basis of the right null space, one column vector per basis element.
    std::vector<std::vector<Rat>> kernel() const;

    // Solve A x = b; nullopt if inconsistent.  Free variables are set to 0.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

} // namespace fet
