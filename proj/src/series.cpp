#include "ecm/series.hpp"

namespace ecm::series {

BiSeries BiSeries::of_sum(int deg, const std::vector<double>& f) {
    // (z1+z2)^m expanded by binomials
    BiSeries s(deg);
    std::vector<double> binom(deg + 1);
    for (int m = 0; m < static_cast<int>(f.size()) && m <= deg; ++m) {
        binom[0] = 1.0;
        for (int j = 1; j <= m; ++j) binom[j] = binom[j - 1] * (m - j + 1) / j;
        for (int j = 0; j <= m; ++j) s.c_[s.idx(m - j, j)] += f[m] * binom[j];
    }
    return s;
}

BiSeries BiSeries::of_single(int deg, const std::vector<double>& f, int which) {
    BiSeries s(deg);
    for (int m = 0; m < static_cast<int>(f.size()) && m <= deg; ++m) {
        if (which == 0) s.c_[s.idx(m, 0)] += f[m];
        else s.c_[s.idx(0, m)] += f[m];
    }
    return s;
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
    if (deg_ != o.deg_) throw Error("BiSeries: degree mismatch");
    BiSeries s(deg_);
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] + o.c_[i];
    return s;
}

BiSeries BiSeries::operator-(const BiSeries& o) const {
    if (deg_ != o.deg_) throw Error("BiSeries: degree mismatch");
    BiSeries s(deg_);
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] - o.c_[i];
    return s;
}

BiSeries BiSeries::operator*(const BiSeries& o) const {
    if (deg_ != o.deg_) throw Error("BiSeries: degree mismatch");
    BiSeries s(deg_);
    for (int d1 = 0; d1 <= deg_; ++d1)
        for (int j1 = 0; j1 <= d1; ++j1) {
            double a = c_[d1 * (d1 + 1) / 2 + j1];
            if (a == 0.0) continue;
            int i1 = d1 - j1;
            for (int d2 = 0; d2 + d1 <= deg_; ++d2)
                for (int j2 = 0; j2 <= d2; ++j2) {
                    double b = o.c_[d2 * (d2 + 1) / 2 + j2];
                    if (b == 0.0) continue;
                    s.c_[s.idx(i1 + d2 - j2, j1 + j2)] += a * b;
                }
        }
    return s;
}

BiSeries BiSeries::scaled(double v) const {
    BiSeries s(deg_);
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] * v;
    return s;
}

}  // namespace ecm::series
