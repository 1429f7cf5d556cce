#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "mcdas/trajectory.hpp"

using namespace mcdas::trajectory;

namespace {

const SigmoidParams kLane{-0.4, 50.0, 3.7, 2.0};

// Final y positions at x = 20 for offsets -2..2 in steps of 0.5, as printed.
struct SettlingRow {
    double offset;
    double y_lsd;
    double y_rsd;
    double target_lsd;
    double target_rsd;
    double err_lsd;
    double err_rsd;
};

const SettlingRow kSettlingTable[] = {
    {-2.0, -5.4942056, 1.6386227, -5.7, 1.7, -0.2057944, 0.0613773},
    {-1.5, -5.0122578, 2.1205706, -5.2, 2.2, -0.1877422, 0.0794294},
    {-1.0, -4.5303099, 2.6025185, -4.7, 2.7, -0.1696901, 0.0974815},
    {-0.5, -4.0483620, 3.0844663, -4.2, 3.2, -0.1516380, 0.1155337},
    {0.0, -3.5664142, 3.5664142, -3.7, 3.7, -0.1335858, 0.1335858},
    {0.5, -3.0844663, 4.0483620, -3.2, 4.2, -0.1155337, 0.1516380},
    {1.0, -2.6025185, 4.5303099, -2.7, 4.7, -0.0974815, 0.1696901},
    {1.5, -2.1205706, 5.0122578, -2.2, 5.2, -0.0794294, 0.1877422},
    {2.0, -1.6386227, 5.4942056, -1.7, 5.7, -0.0613773, 0.2057944},
};

}  // namespace

TEST_CASE("offset is the lateral difference") {
    CHECK(compute_offset(1.0, 1.0) == 0.0);
    CHECK(compute_offset(0.5, 2.5) == -2.0);
    CHECK(compute_offset(2.0, 0.0) == 2.0);
    CHECK(LateralOffset(0.5, 2.5).off == -2.0);
    CHECK_THROWS_AS(compute_offset(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("x position advances linearly") {
    CHECK(lateral_x(0.0, kLane) == 0.0);
    CHECK(lateral_x(10.0, kLane) == Approx(20.0));
    CHECK(lateral_x(5.0, kLane) == Approx(10.0));
    CHECK_THROWS_AS(lateral_x(-0.1, kLane), std::invalid_argument);
}

TEST_CASE("lateral position starts at zero and reaches the printed settling values") {
    for (Side side : {Side::Left, Side::Right}) {
        for (double off : {-2.0, -0.5, 0.0, 1.3}) {
            CHECK(std::fabs(lateral_y(0.0, kLane, off, side)) <= 1e-12);
        }
    }
    CHECK(lateral_y(20.0, kLane, 0.0, Side::Right) == Approx(3.5664142).margin(1e-6));
    CHECK(lateral_y(20.0, kLane, -2.0, Side::Left) == Approx(-5.4942056).margin(1e-6));
    CHECK(lateral_y(20.0, kLane, -2.0, Side::Right) == Approx(1.6386227).margin(1e-6));
    CHECK_THROWS_AS(lateral_y(std::nan(""), kLane, 0.0, Side::Right), std::invalid_argument);
    CHECK_THROWS_AS(lateral_y(20.0, kLane, std::nan(""), Side::Right), std::invalid_argument);
}

TEST_CASE("start nullification holds for any parameter combination") {
    std::mt19937 gen(161);
    std::uniform_real_distribution<double> rate(0.05, 1.0);
    std::uniform_real_distribution<double> shift(1.0, 200.0);
    std::uniform_real_distribution<double> height(0.5, 8.0);
    std::uniform_real_distribution<double> off(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const SigmoidParams p{-rate(gen), shift(gen), height(gen), 2.0};
        for (Side side : {Side::Left, Side::Right}) {
            CHECK(std::fabs(lateral_y(0.0, p, off(gen), side)) <= 1e-12);
        }
    }
}

TEST_CASE("all printed settling rows are reproduced") {
    for (const auto& row : kSettlingTable) {
        CHECK(lateral_y(20.0, kLane, row.offset, Side::Left) ==
              Approx(row.y_lsd).margin(1e-6));
        CHECK(lateral_y(20.0, kLane, row.offset, Side::Right) ==
              Approx(row.y_rsd).margin(1e-6));

        const auto left = settling_error(kLane, row.offset, Side::Left, 20.0);
        CHECK(left.absolute_target == Approx(row.target_lsd).margin(1e-9));
        CHECK(left.error == Approx(row.err_lsd).margin(1e-6));

        const auto right = settling_error(kLane, row.offset, Side::Right, 20.0);
        CHECK(right.absolute_target == Approx(row.target_rsd).margin(1e-9));
        CHECK(right.error == Approx(row.err_rsd).margin(1e-6));
    }
}

TEST_CASE("settling errors stay inside the printed band") {
    for (const auto& row : kSettlingTable) {
        const double lsd = settling_error(kLane, row.offset, Side::Left, 20.0).error;
        CHECK(lsd >= -0.2057944 - 1e-6);
        CHECK(lsd <= -0.0613773 + 1e-6);
        const double rsd = settling_error(kLane, row.offset, Side::Right, 20.0).error;
        CHECK(rsd >= 0.0613773 - 1e-6);
        CHECK(rsd <= 0.2057944 + 1e-6);
    }
}

TEST_CASE("lane-change sampling") {
    const auto path = generate_lane_change(kLane, 0.0, Side::Right, 10.0, 0.5);
    REQUIRE(path.size() == 21);
    CHECK(path.front().t == 0.0);
    CHECK(path.front().x == 0.0);
    CHECK(std::fabs(path.front().y) <= 1e-12);
    CHECK(path.back().x == Approx(20.0));
    CHECK(path.back().y == Approx(3.5664142).margin(1e-6));

    CHECK_THROWS_AS(generate_lane_change(kLane, 0.0, Side::Right, 10.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_lane_change(kLane, 0.0, Side::Right, 0.2, 0.5),
                    std::invalid_argument);
    SigmoidParams parking = kLane;
    parking.a = 0.4;
    CHECK_THROWS_AS(generate_lane_change(parking, 0.0, Side::Right, 10.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("left samples mirror negated right samples") {
    const double w = 1.25;
    const auto left = generate_lane_change(kLane, -w, Side::Left, 10.0, 0.5);
    const auto right = generate_lane_change(kLane, w, Side::Right, 10.0, 0.5);
    REQUIRE(left.size() == right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        CHECK(left[i].x == right[i].x);
        CHECK(left[i].y == Approx(-right[i].y).margin(1e-12));
    }
}

TEST_CASE("mirror identity across random offsets and positions") {
    std::mt19937 gen(5150);
    std::uniform_real_distribution<double> off(-3.0, 3.0);
    std::uniform_real_distribution<double> x(0.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const double o = off(gen);
        const double pos = x(gen);
        CHECK(lateral_y(pos, kLane, o, Side::Left) ==
              Approx(-lateral_y(pos, kLane, -o, Side::Right)).margin(1e-12));
    }
}

TEST_CASE("lateral position is strictly monotone in x") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> off(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double o = off(gen);
        double prev_r = lateral_y(0.0, kLane, o, Side::Right);
        double prev_l = lateral_y(0.0, kLane, o, Side::Left);
        for (double x = 0.25; x <= 30.0; x += 0.25) {
            const double r = lateral_y(x, kLane, o, Side::Right);
            const double l = lateral_y(x, kLane, o, Side::Left);
            CHECK(r > prev_r);
            CHECK(l < prev_l);
            prev_r = r;
            prev_l = l;
        }
    }
}

TEST_CASE("settling residual obeys the closed-form bound") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> off(-3.0, 3.0);
    std::uniform_real_distribution<double> settle(5.0, 40.0);
    std::uniform_real_distribution<double> rate(-1.0, -0.05);
    std::uniform_real_distribution<double> shift(5.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
        SigmoidParams p = kLane;
        p.a = rate(gen);
        p.b = shift(gen);
        const double o = off(gen);
        const double xs = settle(gen);
        for (Side side : {Side::Left, Side::Right}) {
            const double residual = std::fabs(settling_error(p, o, side, xs).error);
            const double amp = p.y_max + std::fabs(o);
            const double bound = amp / (1.0 + p.b) + amp * p.b * std::exp(p.a * xs);
            CHECK(residual <= bound + 1e-12);
        }
    }
}

TEST_CASE("parking limits") {
    const auto c = parking_limits(7.0, 1.0, 2.0, 1.8);
    CHECK(c.x_max == Approx(6.0));
    CHECK(c.y_max_park == Approx(2.9));

    const auto boundary = parking_limits(5.0, 0.0, 0.0, 2.0);
    CHECK(boundary.x_max == Approx(5.0));
    CHECK(boundary.y_max_park == Approx(1.0));

    CHECK_THROWS_AS(parking_limits(1.0, 1.0, 2.0, 1.8), std::invalid_argument);
    CHECK_THROWS_AS(parking_limits(7.0, 1.0, 2.0, 0.0), std::invalid_argument);

    const auto direct = ParkingClearances::from_limits(20.0, 3.7);
    CHECK(direct.x_max == 20.0);
    CHECK(direct.y_max_park == 3.7);
    CHECK_THROWS_AS(ParkingClearances::from_limits(0.0, 3.7), std::invalid_argument);
}

TEST_CASE("parking path shape") {
    SigmoidParams p{0.4, 50.0, 3.7, 2.0};
    const auto path = generate_parking_path(p, 10.0, 0.5);
    REQUIRE(path.size() == 21);
    CHECK(path.front().x == 0.0);
    CHECK(std::fabs(path.front().y) <= 1e-12);
    CHECK(path.back().x == Approx(-20.0));
    CHECK(path.back().y == Approx(-3.5664142).margin(1e-6));

    // x strictly decreasing, y strictly decreasing.
    for (std::size_t i = 1; i < path.size(); ++i) {
        CHECK(path[i].x < path[i - 1].x);
        CHECK(path[i].y < path[i - 1].y);
    }

    // Long-horizon asymptote: -y_max * b / (1 + b).
    const auto distant = generate_parking_path(p, 500.0, 10.0);
    CHECK(distant.back().y == Approx(-3.6274510).margin(1e-6));

    SigmoidParams lane_signs = p;
    lane_signs.a = -0.4;
    CHECK_THROWS_AS(generate_parking_path(lane_signs, 10.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(generate_parking_path(p, 10.0, -0.5), std::invalid_argument);
}

TEST_CASE("parking start is nullified for any coefficients") {
    std::mt19937 gen(88);
    std::uniform_real_distribution<double> rate(0.05, 1.0);
    std::uniform_real_distribution<double> shift(5.0, 100.0);
    std::uniform_real_distribution<double> height(1.0, 6.0);
    for (int i = 0; i < 500; ++i) {
        SigmoidParams p{rate(gen), shift(gen), height(gen), 2.0};
        const auto path = generate_parking_path(p, 4.0, 1.0);
        CHECK(std::fabs(path.front().y) <= 1e-12);
    }
}
