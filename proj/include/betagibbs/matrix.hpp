#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

#include "betagibbs/rational.hpp"

namespace betagibbs {

// Dense fixed-size column vector over an exact scalar type.
template <typename T, std::size_t N>
struct Vector {
    std::array<T, N> e{};

    Vector() = default;
    Vector(std::initializer_list<T> init) {
        if (init.size() != N) throw std::invalid_argument("vector initializer size");
        std::size_t i = 0;
        for (const T& v : init) e[i++] = v;
    }

    T& operator[](std::size_t i) { return e[i]; }
    const T& operator[](std::size_t i) const { return e[i]; }

    static constexpr std::size_t size() { return N; }

    friend bool operator==(const Vector& a, const Vector& b) { return a.e == b.e; }

    Vector operator+(const Vector& o) const {
        Vector r;
        for (std::size_t i = 0; i < N; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    Vector operator-(const Vector& o) const {
        Vector r;
        for (std::size_t i = 0; i < N; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    Vector operator*(const T& c) const {
        Vector r;
        for (std::size_t i = 0; i < N; ++i) r.e[i] = e[i] * c;
        return r;
    }

    T sum() const {
        T s{};
        for (const T& v : e) s += v;
        return s;
    }
    bool is_zero() const {
        for (const T& v : e)
            if (v != 0) return false;
        return true;
    }
};

// Dense fixed-size square matrix, row-major.
template <typename T, std::size_t N>
struct Matrix {
    std::array<std::array<T, N>, N> m{};

    Matrix() = default;
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        if (rows.size() != N) throw std::invalid_argument("matrix initializer rows");
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != N) throw std::invalid_argument("matrix initializer cols");
            std::size_t j = 0;
            for (const T& v : row) m[i][j++] = v;
            ++i;
        }
    }

    static Matrix identity() {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i) r.m[i][i] = T(1);
        return r;
    }

    T& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.m == b.m; }

    Matrix operator+(const Matrix& o) const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const T& a = m[i][k];
                if (a == 0) continue;
                for (std::size_t j = 0; j < N; ++j) {
                    if (o.m[k][j] == 0) continue;
                    r.m[i][j] += a * o.m[k][j];
                }
            }
        return r;
    }
    Vector<T, N> operator*(const Vector<T, N>& v) const {
        Vector<T, N> r;
        for (std::size_t i = 0; i < N; ++i) {
            T s{};
            for (std::size_t j = 0; j < N; ++j)
                if (m[i][j] != 0 && v.e[j] != 0) s += m[i][j] * v.e[j];
            r.e[i] = s;
        }
        return r;
    }
    Matrix operator*(const T& c) const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r.m[i][j] = m[i][j] * c;
        return r;
    }
};

// Row covector acting on the left: r' = r * M.
template <typename T, std::size_t N>
Vector<T, N> row_times(const Vector<T, N>& r, const Matrix<T, N>& M) {
    Vector<T, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        if (r.e[i] == 0) continue;
        for (std::size_t j = 0; j < N; ++j)
            if (M.m[i][j] != 0) out.e[j] += r.e[i] * M.m[i][j];
    }
    return out;
}

template <typename T, std::size_t N>
T dot(const Vector<T, N>& a, const Vector<T, N>& b) {
    T s{};
    for (std::size_t i = 0; i < N; ++i)
        if (a.e[i] != 0 && b.e[i] != 0) s += a.e[i] * b.e[i];
    return s;
}

template <typename TOut, typename TIn, std::size_t N>
Vector<TOut, N> vector_cast(const Vector<TIn, N>& v) {
    Vector<TOut, N> r;
    for (std::size_t i = 0; i < N; ++i) r.e[i] = TOut(v.e[i]);
    return r;
}

template <typename TOut, typename TIn, std::size_t N>
Matrix<TOut, N> matrix_cast(const Matrix<TIn, N>& M) {
    Matrix<TOut, N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r.m[i][j] = TOut(M.m[i][j]);
    return r;
}

}  // namespace betagibbs
