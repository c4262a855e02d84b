#pragma once

#include <optional>
#include <string>

#include "sievelab/sieve.hpp"

namespace sievelab {

enum class SequenceKind { Ones, Random, Mobius, File };

struct SequenceSource {
  SequenceKind kind = SequenceKind::Ones;
  std::string path;  // File only

  /// "ones", "random", "mobius" or "file:PATH"; throws InvalidArgument.
  static SequenceSource parse(const std::string& text);
};

/// Coefficients a_n, n = M+1..M+N.
///   ones   : 1 + 0i
///   random : real and imaginary parts uniform in [-1, 1), element n drawn
///            from SplitMix64::stream(seed, n) so any window reproduces
///   mobius : mu(|n|), with mu(0) = 0
///   file   : exactly N lines "<re> <im>"
/// Throws FormatError (with line number) or LengthMismatch for files.
CoefficientSequence load_sequence(const SequenceSource& source, i64 M, i64 N,
                                  std::optional<u64> seed = std::nullopt);

CoefficientSequence random_sequence(i64 M, i64 N, u64 seed);

}  // namespace sievelab
