#pragma once

#include <vector>

#include "ecm/arith.hpp"

namespace ecm::series {

// Dense bivariate Taylor series in (z1, z2), truncated at a total degree.
class BiSeries {
public:
    explicit BiSeries(int deg) : deg_(deg), c_((deg + 1) * (deg + 2) / 2, 0.0) {}

    static BiSeries constant(int deg, double v) {
        BiSeries s(deg);
        s.set(0, 0, v);
        return s;
    }
    static BiSeries variable(int deg, int which) {  // which: 0 -> z1, 1 -> z2
        BiSeries s(deg);
        if (deg >= 1) s.set(which == 0 ? 1 : 0, which == 0 ? 0 : 1, 1.0);
        return s;
    }
    // f(z1 + z2) for univariate Taylor coefficients f_0, f_1, ...
    static BiSeries of_sum(int deg, const std::vector<double>& f);
    // f(z) in a single variable
    static BiSeries of_single(int deg, const std::vector<double>& f, int which);

    int degree() const { return deg_; }
    double coeff(int i, int j) const { return (i + j > deg_) ? 0.0 : c_[idx(i, j)]; }
    void set(int i, int j, double v) { c_[idx(i, j)] = v; }

    BiSeries operator+(const BiSeries& o) const;
    BiSeries operator-(const BiSeries& o) const;
    BiSeries operator*(const BiSeries& o) const;
    BiSeries scaled(double v) const;

private:
    int idx(int i, int j) const {
        int d = i + j;
        if (d > deg_) throw Error("BiSeries: index beyond truncation degree");
        return d * (d + 1) / 2 + j;
    }
    int deg_;
    std::vector<double> c_;
};

}  // namespace ecm::series
