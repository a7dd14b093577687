// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace covesim {

/// Base class of every covesim exception.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

class WidthError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class NonCleanError : public Error {
public:
    using Error::Error;
};

/// Malformed textual vector literal.
class LiteralError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Unknown or duplicate name: signals, coverage labels, tasks.
class NameError : public Error {
public:
    using Error::Error;
};

} // namespace covesim
