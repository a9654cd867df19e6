#pragma once

#include <stdexcept>
#include <string>

namespace repsc {

/// Sizes, divisibility or parameter constraints violated by the caller.
struct InvalidConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation required every cluster to be nonempty (or have positive
/// volume) and at least one was not.
struct DegenerateClusterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The constraint null space has fewer than K dimensions, so no feasible
/// K-column embedding exists.
struct RankInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix that must be symmetric positive definite was not (typically a
/// consequence of isolated nodes in the similarity graph).
struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace repsc
