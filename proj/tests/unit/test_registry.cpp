#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ecsim/registry.hpp"

using namespace ecsim;

namespace {

TaskRecord rec(TaskId id) {
    TaskRecord r;
    r.properties.id = id;
    return r;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("pruned registry drops retired records") {
    TaskRegistry reg(RegistryStrategy::Pruned);
    reg.add(rec(1));
    reg.add(rec(2));
    reg.lookup(1)->status = TaskStatus::Completed;
    reg.retire(1);
    CHECK(reg.size() == 1);
    CHECK(reg.lookup(1) == nullptr);
    CHECK(reg.lookup(2) != nullptr);
    CHECK(reg.peak_size() == 2);
}

TEST_CASE("append-only registry keeps everything") {
    TaskRegistry reg(RegistryStrategy::AppendOnly);
    reg.add(rec(1));
    reg.add(rec(2));
    reg.lookup(1)->status = TaskStatus::FailedNetwork;
    reg.retire(1);
    CHECK(reg.size() == 2);
    CHECK(reg.lookup(1)->status == TaskStatus::FailedNetwork);
}

TEST_CASE("registry errors") {
    for (auto strategy : {RegistryStrategy::AppendOnly, RegistryStrategy::Pruned}) {
        CAPTURE(static_cast<int>(strategy));
        TaskRegistry reg(strategy);
        reg.add(rec(5));
        CHECK(code_of([&] { reg.add(rec(5)); }) == ErrorCode::DuplicateId);
        CHECK(code_of([&] { reg.retire(6); }) == ErrorCode::UnknownId);
        CHECK(code_of([&] { reg.retire(5); }) == ErrorCode::NotTerminal);
        CHECK(reg.lookup(6) == nullptr);
    }
}

TEST_CASE("probe counts") {
    const TaskId n = 200;
    TaskRegistry list(RegistryStrategy::AppendOnly), map(RegistryStrategy::Pruned);
    for (TaskId i = 0; i < n; ++i) {
        list.add(rec(i));
        map.add(rec(i));
    }
    for (TaskId i = 0; i < n; ++i) {
        list.lookup(i);
        map.lookup(i);
    }
    // looking up the k-th record scans k entries
    CHECK(list.probes() == n * (n + 1) / 2);
    CHECK(map.probes() == n);
}

TEST_CASE("both strategies see the same records under random workloads") {
    std::mt19937_64 gen(8);
    TaskRegistry list(RegistryStrategy::AppendOnly), map(RegistryStrategy::Pruned);
    std::vector<TaskId> live;
    TaskId next = 0;
    for (int step = 0; step < 3000; ++step) {
        if (live.empty() || gen() % 3 != 0) {
            auto r = rec(next);
            r.properties.arrival = static_cast<double>(next);
            list.add(r);
            map.add(r);
            live.push_back(next++);
        } else {
            const std::size_t k = gen() % live.size();
            const TaskId id = live[k];
            for (auto* reg : {&list, &map}) {
                auto* r = reg->lookup(id);
                REQUIRE(r != nullptr);
                CHECK(r->properties.arrival == static_cast<double>(id));
                r->status = TaskStatus::Completed;
                reg->retire(id);
            }
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
        }
        CHECK(map.size() == live.size());
        CHECK(list.size() == next);
    }
}
