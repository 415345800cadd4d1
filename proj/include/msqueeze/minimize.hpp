// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSQUEEZE_MINIMIZE_HPP
#define MSQUEEZE_MINIMIZE_HPP

#include <cmath>
#include <utility>

namespace msq {

/// Golden-section minimum of a unimodal f on [a, b].
/// Returns (argmin, min).
template <typename F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, int iters = 80) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

/// Dense-grid scan of f over [a, b) with `points` samples followed by
/// golden-section refinement around the best cell. Returns (argmin, min).
template <typename F>
std::pair<double, double> grid_refine_min(F&& f, double a, double b, int points) {
    const double step = (b - a) / points;
    double best_x = a;
    double best_f = f(a);
    for (int i = 1; i < points; ++i) {
        const double x = a + i * step;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    auto refined = golden_section_min(f, best_x - step, best_x + step);
    return refined.second < best_f ? refined : std::make_pair(best_x, best_f);
}

}  // namespace msq

#endif
