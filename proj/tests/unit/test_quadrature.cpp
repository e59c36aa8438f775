#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvipat/quadrature.hpp"

using namespace curvipat;

TEST(Quadrature, ConstantMeanIsExact) {
    const auto discs = {make_disk(7, 9), make_sphere(8, 6), make_ball(5, 6, 4),
                        make_cylinder(5, 6, 4, 2.0, 3.0), make_disk(9, 8, 1.0, -1.5)};
    for (const auto& d : discs) {
        EXPECT_NEAR(integral_mean(Field(d->dims, 2.5), *d), 2.5, 1e-14);
        const MeanEvaluator mean(*d);
        EXPECT_NEAR(mean(Field(d->dims, -0.25)), -0.25, 1e-15);
    }
}

TEST(Quadrature, WeightsArePositive) {
    for (const auto& d : {make_disk(6, 8), make_sphere(8, 6), make_ball(4, 6, 5),
                          make_cylinder(4, 6, 3, 1.0, 1.0)}) {
        const Field q = quadrature_weights(*d);
        for (double w : q.vec()) EXPECT_GT(w, 0.0);
    }
}

TEST(Quadrature, DiskAreaApproximatesPi) {
    const auto d = make_disk(100, 100);
    const Field q = quadrature_weights(*d);
    double area = 0.0;
    for (double w : q.vec()) area += w;
    EXPECT_NEAR(area, std::numbers::pi, 0.01 * std::numbers::pi);
}

TEST(Quadrature, SphereMeanOfCosPhiVanishes) {
    const auto d = make_sphere(64, 32);
    Field W(d->dims);
    for (std::size_t k = 0; k < 32; ++k)
        for (std::size_t j = 0; j < 64; ++j) W(j, k) = std::cos(d->phi->grid[k]);
    EXPECT_NEAR(integral_mean(W, *d), 0.0, 1e-3);
}

TEST(Quadrature, SphereMeanOfCosSquaredIsOneThird) {
    const auto d = make_sphere(64, 64);
    Field W(d->dims);
    for (std::size_t k = 0; k < 64; ++k)
        for (std::size_t j = 0; j < 64; ++j) W(j, k) = std::pow(std::cos(d->phi->grid[k]), 2);
    EXPECT_NEAR(integral_mean(W, *d), 1.0 / 3.0, 1e-2);
}

TEST(Quadrature, CylinderMeanOfZIsHalfHeight) {
    const auto d = make_cylinder(10, 8, 40, 2.0, 3.0);
    Field W(d->dims);
    for (std::size_t k = 0; k < 40; ++k)
        for (std::size_t j = 0; j < 8; ++j)
            for (std::size_t i = 0; i < 10; ++i) W(i, j, k) = d->z->grid[k];
    // The Dirichlet top node is not an unknown, so the covered span ends half a step short.
    EXPECT_NEAR(integral_mean(W, *d), 1.5, d->z->h);
}
