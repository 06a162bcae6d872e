#pragma once

namespace ustr {

using Prob = double;

/// Absolute tolerance for every probability comparison in the library.
inline constexpr Prob kProbTolerance = 1e-9;

/// True when `p` reaches threshold `tau` (within tolerance).
inline constexpr bool meets(Prob p, Prob tau) noexcept { return p >= tau - kProbTolerance; }

}  // namespace ustr
