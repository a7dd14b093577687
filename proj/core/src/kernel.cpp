// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/kernel.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>

#include "covesim/vcd.hpp"

namespace covesim::sim {

std::string_view to_string(TaskState s) {
    switch (s) {
    case TaskState::Ready: return "READY";
    case TaskState::Waiting: return "WAITING";
    case TaskState::Done: return "DONE";
    case TaskState::Failed: return "FAILED";
    }
    return "?";
}

bool RunReport::all_passed() const {
    if (tests.empty()) return false;
    return std::all_of(tests.begin(), tests.end(),
                       [](const TestResult &t) { return t.passed(); });
}

const RunReport::TestResult *RunReport::find(std::string_view name) const {
    for (const auto &t : tests)
        if (t.name == name) return &t;
    return nullptr;
}

Kernel::Kernel(KernelConfig cfg) : cfg_(cfg) {}

Kernel::~Kernel() {
    for (auto &t : tasks_)
        if (t.frame) t.frame.destroy();
}

// --- signals ---

SignalId Kernel::create_signal(const std::string &name, size_t width) {
    if (signal_index_.count(name))
        throw NameError("duplicate signal name: " + name);
    SignalRecord s;
    s.name = name;
    s.width = width;
    s.current = LogicVector(width, Logic::X);
    SignalId id = static_cast<SignalId>(signals_.size());
    signals_.push_back(std::move(s));
    signal_index_.emplace(name, id);
    return id;
}

SignalId Kernel::signal(std::string_view name) const {
    auto it = signal_index_.find(std::string(name));
    if (it == signal_index_.end())
        throw NameError("unknown signal: " + std::string(name));
    return it->second;
}

bool Kernel::has_signal(std::string_view name) const {
    return signal_index_.count(std::string(name)) > 0;
}

Kernel::SignalRecord &Kernel::sig(SignalId id) {
    if (id >= signals_.size()) throw NameError("unknown signal id");
    return signals_[id];
}

const Kernel::SignalRecord &Kernel::sig(SignalId id) const {
    if (id >= signals_.size()) throw NameError("unknown signal id");
    return signals_[id];
}

const std::string &Kernel::signal_name(SignalId id) const { return sig(id).name; }
size_t Kernel::signal_width(SignalId id) const { return sig(id).width; }

WriterId Kernel::new_writer() { return next_writer_++; }

void Kernel::write(SignalId id, const LogicVector &value, WriterId w) {
    SignalRecord &s = sig(id);
    if (value.width() != s.width)
        throw WidthError("write width " + std::to_string(value.width()) +
                         " does not match signal '" + s.name + "' width " +
                         std::to_string(s.width));
    s.contributions[w] = value;
    if (!s.dirty) {
        s.dirty = true;
        dirty_signals_.push_back(id);
    }
}

void Kernel::write(SignalId id, uint64_t value, WriterId w) {
    write(id, LogicVector::from_unsigned(value, sig(id).width), w);
}

void Kernel::release(SignalId id, WriterId w) {
    SignalRecord &s = sig(id);
    s.contributions[w] = LogicVector(s.width, Logic::Z);
    if (!s.dirty) {
        s.dirty = true;
        dirty_signals_.push_back(id);
    }
}

void Kernel::attach_pullup(SignalId id) {
    SignalRecord &s = sig(id);
    s.pullup = true;
    if (!s.dirty) {
        s.dirty = true;
        dirty_signals_.push_back(id);
    }
}

LogicVector Kernel::read(SignalId id) const { return sig(id).current; }
Logic Kernel::read_bit(SignalId id) const { return sig(id).current.bit(0); }

// --- tasks ---

TaskId Kernel::spawn_impl(const std::string &name, Task<> t, bool is_test,
                          bool daemon) {
    if (closed_) throw KernelClosedError("spawn after run completion");
    auto h = t.release();
    TaskId id = static_cast<TaskId>(tasks_.size());
    h.promise().kernel = this;
    h.promise().top_task = id;
    TaskRecord rec;
    rec.name = name;
    rec.is_test = is_test;
    rec.daemon = daemon;
    rec.frame = h;
    tasks_.push_back(std::move(rec));
    if (running_)
        next_delta_.push_back({h, id});
    else
        ready_.push_back({h, id});
    return id;
}

TaskId Kernel::spawn(const std::string &name, Task<> t) {
    return spawn_impl(name, std::move(t), false, false);
}
TaskId Kernel::spawn_test(const std::string &name, Task<> t) {
    return spawn_impl(name, std::move(t), true, false);
}
TaskId Kernel::spawn_daemon(const std::string &name, Task<> t) {
    return spawn_impl(name, std::move(t), false, true);
}

Kernel::TaskRecord &Kernel::task(TaskId id) {
    if (id >= tasks_.size()) throw NameError("unknown task id");
    return tasks_[id];
}

TaskState Kernel::task_state(TaskId id) const {
    if (id >= tasks_.size()) throw NameError("unknown task id");
    return tasks_[id].state;
}

TaskHandle Kernel::task_handle(TaskId id) const {
    return {id, task_state(id)};
}

const std::string &Kernel::task_failure(TaskId id) const {
    if (id >= tasks_.size()) throw NameError("unknown task id");
    return tasks_[id].message;
}

void Kernel::on_task_finished(TaskId id, std::exception_ptr e) noexcept {
    TaskRecord &rec = tasks_[id];
    rec.frame = nullptr; // frame destroyed itself at final suspend
    if (e) {
        rec.state = TaskState::Failed;
        try {
            std::rethrow_exception(e);
        } catch (const std::exception &ex) {
            rec.message = ex.what();
        } catch (...) {
            rec.message = "unknown exception";
        }
        diag(DiagLevel::Error, "task '" + rec.name + "' failed: " + rec.message);
        if (rec.is_test && cfg_.fail_fast) abort_ = true;
    } else {
        rec.state = TaskState::Done;
    }
}

namespace detail {
void notify_task_finished(Kernel &k, TaskId id, std::exception_ptr e) noexcept {
    k.on_task_finished(id, e);
}
} // namespace detail

// --- awaitable registration ---

namespace detail {

void TimerAwaiter::await_suspend(std::coroutine_handle<> h) {
    Kernel &k = *kernel;
    TaskId owner = k.current_task_;
    k.tasks_[owner].state = TaskState::Waiting;
    k.tasks_[owner].waiting_on = "timer";
    if (delay.ps == 0)
        k.next_delta_.push_back({h, owner});
    else
        k.timers_[k.now_.ps + delay.ps].push_back({h, owner});
}

void EdgeAwaiter::await_suspend(std::coroutine_handle<> h) {
    Kernel &k = *kernel;
    TaskId owner = k.current_task_;
    auto st = std::make_shared<Kernel::WaitState>();
    st->handle = h;
    st->owner = owner;
    k.tasks_[owner].state = TaskState::Waiting;
    std::string desc = "edge on";
    for (SignalId id : signals) desc += " " + k.signals_[id].name;
    k.tasks_[owner].waiting_on = desc;
    for (SignalId id : signals)
        k.signals_[id].waiters.push_back({st, kind});
}

void DeltaAwaiter::await_suspend(std::coroutine_handle<> h) {
    Kernel &k = *kernel;
    TaskId owner = k.current_task_;
    k.tasks_[owner].state = TaskState::Waiting;
    k.tasks_[owner].waiting_on = "delta";
    k.next_delta_.push_back({h, owner});
}

} // namespace detail

// --- scheduling core ---

void Kernel::run_current_time() {
    uint64_t delta = 0;
    for (;;) {
        while (!ready_.empty()) {
            ReadyEntry e = ready_.front();
            ready_.pop_front();
            current_task_ = e.owner;
            tasks_[e.owner].state = TaskState::Ready;
            ++events_;
            e.handle.resume();
            if (abort_) return;
        }
        settle_signals();
        if (next_delta_.empty()) break;
        for (auto &e : next_delta_) ready_.push_back(e);
        next_delta_.clear();
        if (++delta > cfg_.delta_limit)
            throw OscillationError(
                "delta limit " + std::to_string(cfg_.delta_limit) +
                " exceeded at " + now_.str() + " (combinational loop?)");
    }
}

bool Kernel::settle_signals() {
    if (dirty_signals_.empty()) return false;
    std::sort(dirty_signals_.begin(), dirty_signals_.end());
    dirty_signals_.erase(
        std::unique(dirty_signals_.begin(), dirty_signals_.end()),
        dirty_signals_.end());
    std::vector<SignalId> todo;
    todo.swap(dirty_signals_);

    bool any = false;
    for (SignalId id : todo) {
        SignalRecord &s = signals_[id];
        s.dirty = false;

        LogicVector next(s.width, Logic::Z);
        bool conflict = false;
        for (size_t i = 0; i < s.width; ++i) {
            scratch_drivers_.clear();
            for (const auto &[w, contrib] : s.contributions)
                scratch_drivers_.push_back({contrib.bit(i), Strength::Strong});
            if (s.pullup)
                scratch_drivers_.push_back({Logic::One, Strength::PullUp});
            if (scratch_drivers_.empty()) {
                next.set_bit(i, s.current.bit(i));
                continue;
            }
            Resolved r = resolve_ex(scratch_drivers_);
            conflict |= r.conflict;
            next.set_bit(i, r.value);
        }
        if (conflict)
            diag(DiagLevel::Warn,
                 "conflicting strong drivers on '" + s.name + "', resolved X");

        if (next != s.current) {
            LogicVector old = std::move(s.current);
            s.current = std::move(next);
            ++events_;
            any = true;
            if (vcd_ && !s.vcd_id.empty())
                vcd_->change(s.vcd_id, s.current, now_.ps);
            wake_edge_waiters(id, old, s.current);
        }
    }
    return any;
}

namespace {

bool edge_matches(EdgeKind kind, const LogicVector &oldv,
                  const LogicVector &newv) {
    switch (kind) {
    case EdgeKind::Any:
        return true; // caller only reports actual changes
    case EdgeKind::Rising:
        return oldv.bit(0) == Logic::Zero && newv.bit(0) == Logic::One;
    case EdgeKind::Falling:
        return oldv.bit(0) == Logic::One && newv.bit(0) == Logic::Zero;
    }
    return false;
}

} // namespace

void Kernel::wake_edge_waiters(SignalId id, const LogicVector &oldv,
                               const LogicVector &newv) {
    auto &ws = signals_[id].waiters;
    size_t keep = 0;
    for (auto &w : ws) {
        if (w.state->fired) continue; // swept: fired via another signal
        if (edge_matches(w.kind, oldv, newv)) {
            w.state->fired = true;
            tasks_[w.state->owner].state = TaskState::Ready;
            next_delta_.push_back({w.state->handle, w.state->owner});
            continue;
        }
        ws[keep++] = std::move(w);
    }
    ws.resize(keep);
}

bool Kernel::pending_work_done() const {
    bool any = false;
    for (const auto &t : tasks_) {
        if (t.daemon) continue;
        any = true;
        if (t.state != TaskState::Done && t.state != TaskState::Failed)
            return false;
    }
    return any;
}

void Kernel::report_starved() {
    for (auto &t : tasks_) {
        if (t.daemon) continue;
        if (t.state == TaskState::Waiting || t.state == TaskState::Ready) {
            diag(DiagLevel::Warn, "starved task '" + t.name +
                                      "' never resumed (waiting on " +
                                      (t.waiting_on.empty() ? "nothing"
                                                            : t.waiting_on) +
                                      ")");
            if (t.message.empty())
                t.message = "starved waiting on " + t.waiting_on;
        }
    }
}

RunReport Kernel::run(SimTime horizon) {
    if (closed_) throw KernelClosedError("kernel already ran to completion");
    running_ = true;
    auto wall_start = std::chrono::steady_clock::now();
    vcd_begin();

    for (;;) {
        run_current_time();
        if (abort_ || pending_work_done()) break;
        if (timers_.empty()) break; // nothing left to do
        auto it = timers_.begin();
        if (SimTime{it->first} > horizon) {
            now_ = horizon;
            break;
        }
        now_ = SimTime{it->first};
        for (auto &e : it->second) {
            tasks_[e.owner].state = TaskState::Ready;
            ready_.push_back(e);
        }
        timers_.erase(it);
    }

    report_starved();
    if (vcd_) vcd_->finish(now_.ps);
    running_ = false;
    closed_ = true;

    auto wall_end = std::chrono::steady_clock::now();
    RunReport rep;
    rep.wall_seconds =
        std::chrono::duration<double>(wall_end - wall_start).count();
    rep.events = events_;
    rep.sim_time_ps = now_.ps;
    rep.transactions = transactions_;
    for (const auto &t : tasks_) {
        if (!t.is_test) continue;
        rep.tests.push_back({t.name, t.state, t.message});
    }
    return rep;
}

void Kernel::dump_vcd(const std::string &path) {
    if (running_ || closed_)
        throw Error("dump_vcd must be called before run");
    vcd_ = std::make_unique<VcdWriter>(path);
}

void Kernel::vcd_begin() {
    if (!vcd_) return;
    for (auto &s : signals_)
        s.vcd_id = vcd_->add_signal(s.name, s.width);
    vcd_->write_header();
    for (const auto &s : signals_)
        vcd_->change(s.vcd_id, s.current, 0);
}

void Kernel::diag(DiagLevel level, const std::string &msg) const {
    const char *tag = level == DiagLevel::Info
                          ? "INFO"
                          : (level == DiagLevel::Warn ? "WARN" : "ERROR");
    std::cerr << tag << " time=" << now_.ps << " " << msg << "\n";
}

Task<> clock_driver(Kernel &k, SignalId clk, SimTime period) {
    SimTime half = period / 2;
    k.write(clk, uint64_t{0});
    for (;;) {
        co_await k.delay(half);
        k.write(clk, uint64_t{1});
        co_await k.delay(half);
        k.write(clk, uint64_t{0});
    }
}

TaskId spawn_clock(Kernel &k, SignalId clk, SimTime period) {
    return k.spawn_daemon("clock." + k.signal_name(clk),
                          clock_driver(k, clk, period));
}

} // namespace covesim::sim
