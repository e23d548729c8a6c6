#pragma once

#include <complex>
#include <vector>

namespace nodal {

using cplx = std::complex<double>;

// Small dense row-major matrices. Everything in this project is desk scale
// (n <= 64, embeddings up to 128), so there is no attempt at blocking or BLAS.

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat transposed() const;
    double frobenius() const;
    double max_abs() const;

    std::vector<double> apply(const std::vector<double>& x) const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);

class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols, cplx fill = cplx(0.0, 0.0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static CMat identity(int n);
    static CMat from_real(const Mat& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    CMat adjoint() const;
    double frobenius() const;
    double max_abs() const;

    std::vector<cplx> apply(const std::vector<cplx>& x) const;

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);

double norm2(const std::vector<double>& x);
double norm2(const std::vector<cplx>& x);
cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y);  // conj(x).y
double inner(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nodal
