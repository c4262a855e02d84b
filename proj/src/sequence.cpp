#include "sievelab/sequence.hpp"

#include <fstream>
#include <sstream>

#include "sievelab/errors.hpp"
#include "sievelab/random.hpp"

namespace sievelab {

SequenceSource SequenceSource::parse(const std::string& text) {
  if (text == "ones") return {SequenceKind::Ones, {}};
  if (text == "random") return {SequenceKind::Random, {}};
  if (text == "mobius") return {SequenceKind::Mobius, {}};
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return {SequenceKind::File, text.substr(5)};
  throw InvalidArgument("unknown sequence source '" + text + "'");
}

CoefficientSequence random_sequence(i64 M, i64 N, u64 seed) {
  std::vector<std::complex<double>> values;
  values.reserve(static_cast<std::size_t>(N));
  for (i64 n = M + 1; n <= M + N; ++n) {
    values.push_back(SplitMix64::stream(seed, static_cast<u64>(n)).complex_symmetric());
  }
  return {M, std::move(values)};
}

namespace {

CoefficientSequence read_file(const std::string& path, i64 M, i64 N) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<std::complex<double>> values;
  std::string line;
  i64 lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra)) {
      throw FormatError(path + ": line " + std::to_string(lineno) + ": expected '<re> <im>'");
    }
    values.emplace_back(re, im);
  }
  if (static_cast<i64>(values.size()) != N) {
    throw LengthMismatch(path + ": " + std::to_string(values.size()) + " lines, expected " +
                         std::to_string(N));
  }
  return {M, std::move(values)};
}

}  // namespace

CoefficientSequence load_sequence(const SequenceSource& source, i64 M, i64 N, std::optional<u64> seed) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  switch (source.kind) {
    case SequenceKind::Ones:
      return {M, std::vector<std::complex<double>>(static_cast<std::size_t>(N), 1.0)};
    case SequenceKind::Random:
      if (!seed) throw InvalidArgument("random sequences need a seed");
      return random_sequence(M, N, *seed);
    case SequenceKind::Mobius: {
      std::vector<std::complex<double>> values;
      values.reserve(static_cast<std::size_t>(N));
      for (i64 n = M + 1; n <= M + N; ++n) values.emplace_back(static_cast<double>(mobius(n)), 0.0);
      return {M, std::move(values)};
    }
    case SequenceKind::File:
      return read_file(source.path, M, N);
  }
  throw InvalidArgument("unhandled sequence source");
}

}  // namespace sievelab
