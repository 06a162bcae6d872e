#pragma once

#include <cstddef>

namespace ustr {

/// Selects the serial reference path or the OpenMP path of a kernel.
/// Both produce identical results; the serial path is kept for testing.
enum class Execution { serial, parallel };

/// Threads the parallel path will use (1 without OpenMP).
std::size_t max_threads() noexcept;

}  // namespace ustr
