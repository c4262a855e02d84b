#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/modular.hpp"
#include "sievelab/sequence.hpp"

namespace sievelab {

struct RunConfig {
  std::string verb;
  i64 qmax = 0;
  std::vector<i64> qlist;
  std::vector<i64> nlist;
  i64 m = 0;
  std::string sequence = "ones";
  std::optional<u64> seed;
  std::string out_path;
  std::string json_path;
  std::optional<unsigned> threads;
  double tolerance = 1e-9;

  // characters
  i64 p = 0;
  i64 a = 1;
  bool dump = false;
  // kloosterman / weil-grid
  i64 c = 0;
  i64 km = 0;
  i64 kn = 0;
  i64 cmax = 0;
  std::vector<i64> clist;
  // factor-check / ramanujan-grid
  i64 trials = 0;
  i64 pmax = 23;
  i64 lmax = 200;
};

/// Worker count: --threads if given, else SIEVELAB_THREADS, else the
/// hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

/// Exit status: 0 success, 1 verification failure, 2 usage or input error.
/// Failures are listed on `err` with the offending tuple.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sievelab
