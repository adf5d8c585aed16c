#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ecsim/mobility.hpp"
#include "support.hpp"

using namespace ecsim;
using ecsim::testing::ScriptedSource;
using ecsim::testing::variate_for;

namespace {

std::vector<AccessPoint> aps_with(std::vector<double> dwell) {
    std::vector<AccessPoint> out;
    for (std::size_t i = 0; i < dwell.size(); ++i) out.push_back({static_cast<ApId>(i), 0, 0, dwell[i], 100.0});
    return out;
}

}  // namespace

TEST_CASE("dwell sampling by inverse transform") {
    CHECK(mobility::sample_dwell(60.0, 0.5) == doctest::Approx(60.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(mobility::sample_dwell(60.0, 0.5) == doctest::Approx(41.588830833596715));
    CHECK(mobility::sample_dwell(10.0, 0.0) == 0.0);
}

TEST_CASE("dwell sample mean matches attractiveness") {
    Stream s(11, 0, StreamPurpose::MobilityDwell);
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += mobility::sample_dwell(60.0, s.uniform());
    // sd of the mean is 0.06
    CHECK(std::abs(sum / n - 60.0) < 0.5);
}

TEST_CASE("destination excludes the current location") {
    CHECK(mobility::pick_destination(2, 4, 0.7) == 3);
    CHECK(mobility::pick_destination(0, 2, 0.0) == 1);
    CHECK(mobility::pick_destination(0, 2, 0.999) == 1);
    CHECK(mobility::pick_destination(3, 4, 0.999) == 2);
    try {
        mobility::pick_destination(0, 1, 0.3);
        FAIL("expected DegenerateTopology");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateTopology);
    }
}

TEST_CASE("destinations are uniform over the other locations") {
    Stream s(5, 0, StreamPurpose::MobilityDestination);
    std::array<int, 4> hits{};
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) ++hits[mobility::pick_destination(1, 4, s.uniform())];
    CHECK(hits[1] == 0);
    for (ApId a : {0u, 2u, 3u}) CHECK(std::abs(hits[a] / double(n) - 1.0 / 3.0) < 0.002);
}

TEST_CASE("trajectory with a tiny horizon still records the first move") {
    const auto aps = aps_with({100.0, 100.0});
    ScriptedSource dwell{{variate_for(100.0, 100.0)}};
    ScriptedSource dest{{0.1, 0.4}};
    const auto traj = precompute_trajectory(aps, 1e-9, dwell, dest);
    CHECK(traj.movement_count() == 1);
    CHECK(traj.points().begin()->first == 0.0);
    CHECK(std::next(traj.points().begin())->first == doctest::Approx(100.0));
}

TEST_CASE("trajectory stops at the first move past the horizon") {
    const auto aps = aps_with({100.0, 200.0, 300.0});
    ScriptedSource dwell{{variate_for(100.0, 100.0), variate_for(200.0, 250.0)}};
    // initial loc 0, then 1, then 0
    ScriptedSource dest{{0.0, 0.0, 0.0}};
    const auto traj = precompute_trajectory(aps, 200.0, dwell, dest);
    std::vector<double> keys;
    for (const auto& [t, loc] : traj.points()) keys.push_back(t);
    REQUIRE(keys.size() == 3);
    CHECK(keys[0] == 0.0);
    CHECK(keys[1] == doctest::Approx(100.0));
    CHECK(keys[2] == doctest::Approx(350.0));
}

TEST_CASE("trajectory floor lookup") {
    Trajectory t;
    t.add(0.0, 3);
    t.add(120.0, 7);
    t.add(300.0, 2);
    CHECK(t.location_at(0.0) == 3);
    CHECK(t.location_at(119.999) == 3);
    CHECK(t.location_at(120.0) == 7);
    CHECK(t.location_at(299.0) == 7);
    CHECK(t.location_at(1e6) == 2);
    CHECK_THROWS_AS(t.location_at(-1.0), Error);
}

TEST_CASE("movements up to the horizon average horizon over attractiveness") {
    const auto aps = aps_with({300.0, 300.0, 300.0});
    const SimTime horizon = 1800.0;
    double within = 0.0;
    const int devices = 500;
    for (DeviceId d = 0; d < devices; ++d) {
        auto s = MobilityStreams::for_device(3, d);
        const auto traj = precompute_trajectory(aps, horizon, s.dwell, s.destination);
        const auto past = std::count_if(traj.points().begin(), traj.points().end(),
                                        [&](const auto& p) { return p.first > horizon; });
        CHECK(past == 1);
        within += static_cast<double>(traj.movement_count() - past);
        // property: consecutive locations differ, keys strictly increase
        ApId prev = MobilityState::kUnplaced;
        for (const auto& [t, loc] : traj.points()) {
            CHECK(loc != prev);
            prev = loc;
        }
    }
    CHECK(std::abs(within / devices - horizon / 300.0) < 0.5);
}

TEST_CASE("device count by scanning trajectories") {
    const auto aps = aps_with({50.0, 50.0, 50.0});
    std::vector<Trajectory> trajs(3);
    trajs[0].add(0, 0);
    trajs[0].add(10, 1);
    trajs[1].add(0, 0);
    trajs[2].add(0, 2);
    trajs[2].add(5, 0);
    TrajectoryTable table(aps, trajs);
    CHECK(table.device_count_at(0, 0.0) == 2);
    CHECK(table.device_count_at(0, 6.0) == 3);
    CHECK(table.device_count_at(0, 10.0) == 2);
    CHECK(table.device_count_at(1, 10.0) == 1);
    CHECK_THROWS_AS(table.device_count_at(7, 1.0), Error);
}

TEST_CASE("event-driven init places every device and schedules one move each") {
    Kernel k;
    auto aps = aps_with({60.0, 60.0, 60.0, 60.0});
    auto state = init_event_driven(3, aps, [](DeviceId) {
        struct Forced {
            ScriptedSource dwell{{0.5}};
            ScriptedSource destination{{0.0}};
        };
        return Forced{};
    }, k);
    CHECK(std::vector<std::uint32_t>(state.counts().begin(), state.counts().end()) ==
          std::vector<std::uint32_t>{3, 0, 0, 0});
    CHECK(k.size() == 3);
    while (auto e = k.pop_next()) CHECK(e->kind == EventKind::DeviceMove);

    Kernel k2;
    CHECK_THROWS_AS(init_event_driven(0, aps, [](DeviceId d) { return MobilityStreams::for_device(1, d); }, k2),
                    Error);
    try {
        init_event_driven(2, aps_with({60.0}), [](DeviceId d) { return MobilityStreams::for_device(1, d); }, k2);
        FAIL("expected DegenerateTopology");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateTopology);
    }
}

TEST_CASE("applying a move updates counters and schedules the next one") {
    const auto aps = aps_with({60.0, 60.0, 75.0, 60.0});
    MobilityState state(aps, 3);
    state.place(0, 0, 100.0);
    state.place(1, 0, 500.0);
    state.place(2, 2, 500.0);
    Kernel k;
    k.schedule(100.0, EventKind::DeviceMove, {.device = 0});
    k.pop_next();
    ScriptedSource dwell{{variate_for(75.0, 75.0)}};
    ScriptedSource dest{{0.5}};  // {1,2,3} -> 2
    CHECK(apply_movement(state, 0, k, dwell, dest) == 2);
    CHECK(std::vector<std::uint32_t>(state.counts().begin(), state.counts().end()) ==
          std::vector<std::uint32_t>{1, 0, 2, 0});
    CHECK(state.next_move_at(0) == doctest::Approx(175.0));
    auto e = k.pop_next();
    REQUIRE(e);
    CHECK(e->time == doctest::Approx(175.0));
    CHECK(e->payload.device == 0);

    // dispatching a move that is not the device's pending one is a bug
    k.schedule(180.0, EventKind::DeviceMove, {.device = 1});
    k.pop_next();
    ScriptedSource d2{{0.5}}, l2{{0.5}};
    CHECK_THROWS_AS(apply_movement(state, 1, k, d2, l2), Error);
}

TEST_CASE("counter underflow is reported") {
    MobilityState state(aps_with({1.0, 1.0}), 2);
    try {
        state.relocate(1, 0, 5.0);
        FAIL("expected InconsistentState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentState);
    }
}

TEST_CASE("event-driven replay reproduces the precomputed trajectory") {
    const auto aps = aps_with({40.0, 90.0, 150.0, 400.0, 25.0});
    const SimTime horizon = 3600.0;
    const std::uint64_t seed = 77;
    const std::size_t devices = 30;
    std::vector<Trajectory> expected;
    for (DeviceId d = 0; d < devices; ++d) {
        auto s = MobilityStreams::for_device(seed, d);
        expected.push_back(precompute_trajectory(aps, horizon, s.dwell, s.destination));
    }
    std::vector<MobilityStreams> streams;
    for (DeviceId d = 0; d < devices; ++d) streams.push_back(MobilityStreams::for_device(seed, d));
    Kernel k;
    auto state = init_event_driven(devices, aps, [&](DeviceId d) -> MobilityStreams& { return streams[d]; }, k);
    std::vector<Trajectory> replay(devices);
    for (DeviceId d = 0; d < devices; ++d) replay[d].add(0.0, state.location_of(d));
    TrajectoryTable table(aps, expected);

    k.run(horizon, [&](const Event& e, Kernel& kk) {
        const DeviceId d = e.payload.device;
        const ApId to = apply_movement(state, d, kk, streams[d].dwell, streams[d].destination);
        replay[d].add(e.time, to);
        // incremental counters agree with a brute-force recount and with the table
        for (ApId a = 0; a < aps.size(); ++a) {
            const auto brute = std::count(state.locations().begin(), state.locations().end(), a);
            CHECK(state.device_count_at(a) == brute);
            CHECK(table.device_count_at(a, e.time) == brute);
        }
    });
    // the replay stops at the horizon; the precomputed one carries one extra move
    for (DeviceId d = 0; d < devices; ++d) {
        auto ex = expected[d].points();
        ex.erase(std::prev(ex.end()));
        CHECK(replay[d].points() == ex);
        CHECK(state.next_move_at(d) == std::prev(expected[d].points().end())->first);
    }
    CHECK_THROWS_AS(state.device_count_at(99), Error);
}
