// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <coroutine>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "covesim/errors.hpp"
#include "covesim/logic.hpp"
#include "covesim/sim_time.hpp"
#include "covesim/task.hpp"

namespace covesim::sim {

class KernelClosedError : public Error {
public:
    using Error::Error;
};
class OscillationError : public Error {
public:
    using Error::Error;
};

using SignalId = uint32_t;
using WriterId = uint32_t;

enum class EdgeKind { Rising, Falling, Any };
enum class TaskState { Ready, Waiting, Done, Failed };

std::string_view to_string(TaskState s);

enum class DiagLevel { Info, Warn, Error };

struct TaskHandle {
    TaskId id = 0;
    TaskState state = TaskState::Ready;
};

/// Result of one Kernel::run. `events` counts task resumptions plus applied
/// signal value changes.
struct RunReport {
    struct TestResult {
        std::string name;
        TaskState state = TaskState::Ready;
        std::string message;
        bool passed() const { return state == TaskState::Done; }
    };

    std::vector<TestResult> tests;
    double wall_seconds = 0.0;
    uint64_t events = 0;
    uint64_t sim_time_ps = 0;
    uint64_t transactions = 0;

    bool all_passed() const;
    const TestResult *find(std::string_view name) const;
};

struct KernelConfig {
    uint64_t delta_limit = 1000; // combinational loop guard
    bool fail_fast = false;      // abort run on first failed test task
};

class VcdWriter;
class Kernel;

namespace detail {

struct TimerAwaiter {
    Kernel *kernel;
    SimTime delay;
    bool await_ready() { return false; }
    void await_suspend(std::coroutine_handle<> h);
    void await_resume() {}
};

struct EdgeAwaiter {
    Kernel *kernel;
    std::vector<SignalId> signals;
    EdgeKind kind;
    bool await_ready() { return false; }
    void await_suspend(std::coroutine_handle<> h);
    void await_resume() {}
};

struct DeltaAwaiter {
    Kernel *kernel;
    bool await_ready() { return false; }
    void await_suspend(std::coroutine_handle<> h);
    void await_resume() {}
};

} // namespace detail

/// Deterministic single-threaded discrete-event scheduler. One instance per
/// simulation; instances are confined to the thread that runs them.
class Kernel {
public:
    explicit Kernel(KernelConfig cfg = {});
    ~Kernel();
    Kernel(const Kernel &) = delete;
    Kernel &operator=(const Kernel &) = delete;

    // --- signals ---
    SignalId create_signal(const std::string &name, size_t width);
    SignalId signal(std::string_view name) const; // NameError if unknown
    bool has_signal(std::string_view name) const;
    const std::string &signal_name(SignalId id) const;
    size_t signal_width(SignalId id) const;

    WriterId new_writer();

    /// Records a contribution; readers observe it only after the next delta
    /// settle. Writer 0 is the default testbench writer.
    void write(SignalId id, const LogicVector &value, WriterId w = 0);
    void write(SignalId id, uint64_t value, WriterId w = 0);
    /// Releases the writer's contribution to all-Z.
    void release(SignalId id, WriterId w = 0);
    /// Attaches a permanent pull-up contribution to every bit.
    void attach_pullup(SignalId id);

    LogicVector read(SignalId id) const;
    /// Post-settle scalar view of a 1-bit signal.
    Logic read_bit(SignalId id) const;

    // --- tasks ---
    TaskId spawn(const std::string &name, Task<> t);
    TaskId spawn_test(const std::string &name, Task<> t);
    /// Daemons (clocks, DUT processes) do not hold the run open.
    TaskId spawn_daemon(const std::string &name, Task<> t);

    TaskState task_state(TaskId id) const;
    TaskHandle task_handle(TaskId id) const;
    const std::string &task_failure(TaskId id) const;

    // --- awaitables (valid only inside tasks) ---
    [[nodiscard]] detail::TimerAwaiter delay(SimTime d) { return {this, d}; }
    [[nodiscard]] detail::EdgeAwaiter edge(SignalId id, EdgeKind kind);
    [[nodiscard]] detail::EdgeAwaiter rising_edge(SignalId id) {
        return edge(id, EdgeKind::Rising);
    }
    [[nodiscard]] detail::EdgeAwaiter falling_edge(SignalId id) {
        return edge(id, EdgeKind::Falling);
    }
    [[nodiscard]] detail::EdgeAwaiter any_edge(SignalId id) {
        return edge(id, EdgeKind::Any);
    }
    [[nodiscard]] detail::EdgeAwaiter any_edge(std::vector<SignalId> ids);
    /// Resumes at the next delta of the current time.
    [[nodiscard]] detail::DeltaAwaiter settle() { return {this}; }

    // --- run control ---
    /// Pre-run only: registers a VCD dump of every signal. IoError if the
    /// path cannot be opened.
    void dump_vcd(const std::string &path);

    RunReport run(SimTime horizon = SimTime::max());

    SimTime now() const { return now_; }
    uint64_t events() const { return events_; }
    bool closed() const { return closed_; }

    /// Harness hook: transaction tally reported in RunReport.
    void count_transaction(uint64_t n = 1) { transactions_ += n; }

    void diag(DiagLevel level, const std::string &msg) const;

private:
    friend void detail::notify_task_finished(Kernel &, TaskId,
                                             std::exception_ptr) noexcept;
    friend struct detail::TimerAwaiter;
    friend struct detail::EdgeAwaiter;
    friend struct detail::DeltaAwaiter;

    struct WaitState {
        std::coroutine_handle<> handle;
        TaskId owner = 0;
        bool fired = false;
    };
    struct EdgeWaiter {
        std::shared_ptr<WaitState> state;
        EdgeKind kind;
    };
    struct SignalRecord {
        std::string name;
        size_t width = 0;
        LogicVector current;
        std::map<WriterId, LogicVector> contributions;
        bool pullup = false;
        bool dirty = false;
        std::vector<EdgeWaiter> waiters;
        std::string vcd_id;
    };
    struct ReadyEntry {
        std::coroutine_handle<> handle;
        TaskId owner = 0;
    };
    struct TaskRecord {
        std::string name;
        TaskState state = TaskState::Ready;
        std::string message;
        bool is_test = false;
        bool daemon = false;
        std::coroutine_handle<> frame{}; // top-level frame, owned
        std::string waiting_on;
    };

    TaskId spawn_impl(const std::string &name, Task<> t, bool is_test,
                      bool daemon);
    void enqueue_ready(ReadyEntry e);
    void register_edge_waiter(SignalId id, EdgeKind kind,
                              std::shared_ptr<WaitState> st);
    void on_task_finished(TaskId id, std::exception_ptr e) noexcept;
    void run_current_time();
    bool settle_signals(); // returns true if any value changed
    void wake_edge_waiters(SignalId id, const LogicVector &oldv,
                           const LogicVector &newv);
    bool pending_work_done() const;
    void report_starved();
    SignalRecord &sig(SignalId id);
    const SignalRecord &sig(SignalId id) const;
    TaskRecord &task(TaskId id);
    void vcd_begin();
    void vcd_change(const SignalRecord &s);

    KernelConfig cfg_;
    SimTime now_{0};
    bool running_ = false;
    bool closed_ = false;
    bool abort_ = false;
    uint64_t events_ = 0;
    uint64_t transactions_ = 0;
    TaskId current_task_ = 0;

    std::vector<SignalRecord> signals_;
    std::unordered_map<std::string, SignalId> signal_index_;
    std::vector<SignalId> dirty_signals_;
    std::vector<TaskRecord> tasks_;
    WriterId next_writer_ = 1;

    std::deque<ReadyEntry> ready_;
    std::vector<ReadyEntry> next_delta_;
    std::map<uint64_t, std::vector<ReadyEntry>> timers_;

    std::unique_ptr<VcdWriter> vcd_;
    mutable std::vector<Driver> scratch_drivers_;
};

/// 50% duty clock generator starting low; first rising edge at period/2.
Task<> clock_driver(Kernel &k, SignalId clk, SimTime period);
TaskId spawn_clock(Kernel &k, SignalId clk, SimTime period);

inline detail::EdgeAwaiter Kernel::edge(SignalId id, EdgeKind kind) {
    if (id >= signals_.size()) throw NameError("edge wait on unknown signal");
    if (kind != EdgeKind::Any && signals_[id].width != 1)
        throw WidthError("rising/falling edge wait requires a 1-bit signal: " +
                         signals_[id].name);
    return detail::EdgeAwaiter{this, {id}, kind};
}

inline detail::EdgeAwaiter Kernel::any_edge(std::vector<SignalId> ids) {
    if (ids.empty()) throw RangeError("any_edge needs at least one signal");
    for (SignalId id : ids)
        if (id >= signals_.size()) throw NameError("edge wait on unknown signal");
    return detail::EdgeAwaiter{this, std::move(ids), EdgeKind::Any};
}

} // namespace covesim::sim
