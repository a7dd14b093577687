// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

namespace covesim::sim {

class Kernel;
using TaskId = uint32_t;

namespace detail {

/// State shared by every task promise. `continuation` is set when the frame
/// is awaited by another task; `kernel` is set only on top-level spawned
/// frames, which report completion to the scheduler instead.
struct PromiseBase {
    Kernel *kernel = nullptr;
    TaskId top_task = 0;
    std::coroutine_handle<> continuation{};
    std::exception_ptr exception{};
};

void notify_task_finished(Kernel &k, TaskId id, std::exception_ptr e) noexcept;

template <typename Promise>
struct FinalAwaiter {
    bool await_ready() noexcept { return false; }
    std::coroutine_handle<>
    await_suspend(std::coroutine_handle<Promise> h) noexcept {
        auto &p = h.promise();
        if (p.continuation) return p.continuation;
        if (p.kernel) {
            Kernel &k = *p.kernel;
            TaskId id = p.top_task;
            std::exception_ptr e = p.exception;
            h.destroy();
            notify_task_finished(k, id, e);
        }
        return std::noop_coroutine();
    }
    void await_resume() noexcept {}
};

} // namespace detail

/// A cooperative testbench coroutine. Tasks start suspended; they run either
/// when spawned onto a Kernel or when awaited from another task.
template <typename T = void>
class [[nodiscard]] Task {
public:
    struct promise_type : detail::PromiseBase {
        std::optional<T> value{};

        Task get_return_object() {
            return Task(std::coroutine_handle<promise_type>::from_promise(*this));
        }
        std::suspend_always initial_suspend() noexcept { return {}; }
        detail::FinalAwaiter<promise_type> final_suspend() noexcept { return {}; }
        void return_value(T v) { value = std::move(v); }
        void unhandled_exception() { this->exception = std::current_exception(); }
    };

    Task() = default;
    explicit Task(std::coroutine_handle<promise_type> h) : h_(h) {}
    Task(Task &&other) noexcept : h_(std::exchange(other.h_, nullptr)) {}
    Task &operator=(Task &&other) noexcept {
        if (this != &other) {
            if (h_) h_.destroy();
            h_ = std::exchange(other.h_, nullptr);
        }
        return *this;
    }
    Task(const Task &) = delete;
    Task &operator=(const Task &) = delete;
    ~Task() {
        if (h_) h_.destroy();
    }

    /// Awaiting a task starts it immediately (symmetric transfer) and
    /// resumes the awaiter when it completes.
    auto operator co_await() && {
        struct Awaiter {
            std::coroutine_handle<promise_type> h;
            bool await_ready() { return false; }
            std::coroutine_handle<>
            await_suspend(std::coroutine_handle<> cont) {
                h.promise().continuation = cont;
                return h;
            }
            T await_resume() {
                if (h.promise().exception)
                    std::rethrow_exception(h.promise().exception);
                return std::move(*h.promise().value);
            }
        };
        return Awaiter{h_};
    }

    std::coroutine_handle<promise_type> release() {
        return std::exchange(h_, nullptr);
    }

private:
    std::coroutine_handle<promise_type> h_{};
};

template <>
class [[nodiscard]] Task<void> {
public:
    struct promise_type : detail::PromiseBase {
        Task get_return_object() {
            return Task(std::coroutine_handle<promise_type>::from_promise(*this));
        }
        std::suspend_always initial_suspend() noexcept { return {}; }
        detail::FinalAwaiter<promise_type> final_suspend() noexcept { return {}; }
        void return_void() {}
        void unhandled_exception() { this->exception = std::current_exception(); }
    };

    Task() = default;
    explicit Task(std::coroutine_handle<promise_type> h) : h_(h) {}
    Task(Task &&other) noexcept : h_(std::exchange(other.h_, nullptr)) {}
    Task &operator=(Task &&other) noexcept {
        if (this != &other) {
            if (h_) h_.destroy();
            h_ = std::exchange(other.h_, nullptr);
        }
        return *this;
    }
    Task(const Task &) = delete;
    Task &operator=(const Task &) = delete;
    ~Task() {
        if (h_) h_.destroy();
    }

    auto operator co_await() && {
        struct Awaiter {
            std::coroutine_handle<promise_type> h;
            bool await_ready() { return false; }
            std::coroutine_handle<>
            await_suspend(std::coroutine_handle<> cont) {
                h.promise().continuation = cont;
                return h;
            }
            void await_resume() {
                if (h.promise().exception)
                    std::rethrow_exception(h.promise().exception);
            }
        };
        return Awaiter{h_};
    }

    std::coroutine_handle<promise_type> release() {
        return std::exchange(h_, nullptr);
    }

private:
    std::coroutine_handle<promise_type> h_{};
};

} // namespace covesim::sim
