#include "aquakern/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aquakern::linalg {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("symmetric_eigenvalues: bad dimensions");
    auto at = [&](int r, int c) -> double& { return a[r * n + c]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = r + 1; c < n; ++c) off += at(r, c) * at(r, c);
        if (off < 1e-24) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_symmetric_eigenvalue(const std::vector<double>& a, int n) {
    return symmetric_eigenvalues(a, n).front();
}

}  // namespace aquakern::linalg
