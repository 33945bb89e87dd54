#include "pappus/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "pappus/errors.hpp"

namespace pappus {

namespace {

double off_norm(const Mat3d& a) {
    return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

}  // namespace

SymEigen jacobi_eigen(const Mat3d& input, double tol, int max_sweeps) {
    Mat3d a = input;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double m = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = a[j][i] = m;
        }
    Mat3d v = identity3<double>();

    double total = 0;
    for (const auto& row : a)
        for (double x : row) total += x * x;
    total = std::sqrt(total);
    const double target = tol * (total > 0 ? total : 1.0);

    int sweep = 0;
    while (off_norm(a) > target) {
        if (sweep++ >= max_sweeps) throw GeometryError(ErrorCode::NumericalFailure, "jacobi did not converge");
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });
    SymEigen out;
    out.sweeps = sweep;
    for (int k = 0; k < 3; ++k) {
        out.values[k] = a[order[k]][order[k]];
        for (int i = 0; i < 3; ++i) out.vectors[i][k] = v[i][order[k]];
    }
    return out;
}

}  // namespace pappus
