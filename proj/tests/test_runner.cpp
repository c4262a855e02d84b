#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sievelab/errors.hpp"
#include "sievelab/runner.hpp"
#include "sievelab/sequence.hpp"

using namespace sievelab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "sievelab_test_runner";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream is(row);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("load_sequence built-ins") {
  const auto ones = load_sequence(SequenceSource::parse("ones"), 0, 3);
  CHECK(ones.values() == std::vector<std::complex<double>>{1.0, 1.0, 1.0});
  CHECK(ones.first() == 1);

  const auto mu = load_sequence(SequenceSource::parse("mobius"), 0, 4);
  CHECK(mu.values() == std::vector<std::complex<double>>{1.0, -1.0, -1.0, 0.0});
  const auto mu_shift = load_sequence(SequenceSource::parse("mobius"), 4, 5);
  CHECK(mu_shift.values() == std::vector<std::complex<double>>{-1.0, 1.0, -1.0, 0.0, 0.0});

  CHECK_THROWS_AS(load_sequence(SequenceSource::parse("random"), 0, 3), InvalidArgument);
  CHECK_THROWS_AS(SequenceSource::parse("gaussian"), InvalidArgument);

  // Any window of the random stream agrees with the full draw.
  const auto full = load_sequence(SequenceSource::parse("random"), 0, 50, 9);
  const auto window = load_sequence(SequenceSource::parse("random"), 20, 10, 9);
  for (i64 n = 21; n <= 30; ++n) CHECK(window.at(n) == full.at(n));
  for (const auto& z : full.values()) {
    REQUIRE(z.real() >= -1.0);
    REQUIRE(z.real() < 1.0);
    REQUIRE(z.imag() >= -1.0);
    REQUIRE(z.imag() < 1.0);
  }
  CHECK(load_sequence(SequenceSource::parse("random"), 0, 50, 10).values() != full.values());
}

TEST_CASE("load_sequence from files") {
  const auto good = scratch("good.txt");
  write_file(good, "1 0\n-0.5 2.25\n3e-1 -1\n");
  const auto s = load_sequence(SequenceSource::parse("file:" + good.string()), 7, 3);
  CHECK(s.first() == 8);
  CHECK(s.at(9) == std::complex<double>(-0.5, 2.25));
  CHECK(s.at(10) == std::complex<double>(0.3, -1.0));

  const auto short_file = scratch("short.txt");
  write_file(short_file, "1 0\n2 0\n");
  CHECK_THROWS_AS(load_sequence(SequenceSource::parse("file:" + short_file.string()), 0, 3), LengthMismatch);

  const auto bad = scratch("bad.txt");
  write_file(bad, "1 0\n2 x\n3 0\n");
  try {
    load_sequence(SequenceSource::parse("file:" + bad.string()), 0, 3);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  const auto extra = scratch("extra.txt");
  write_file(extra, "1 0 5\n");
  CHECK_THROWS_AS(load_sequence(SequenceSource::parse("file:" + extra.string()), 0, 1), FormatError);
}

TEST_CASE("exit codes") {
  CHECK(run({"verify-identity", "--qmax", "31", "--n", "200", "--seq", "random", "--seed", "42"}).code == 0);
  CHECK(run({"scan", "--qmax", "0", "--nlist", "4"}).code == 2);
  CHECK(run({"verify-identity", "--qmax", "5", "--n", "4", "--seq", "random"}).code == 2);
  CHECK(run({"verify-identity", "--qmax", "5", "--n", "4", "--seq", "file:/nonexistent/x"}).code == 2);
  CHECK(run({"no-such-verb"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"extremal", "--qmax", "5", "--n", "5000"}).code == 2);

  const auto weil = run({"weil-grid", "--cmax", "105"});
  CHECK(weil.code == 0);
  const auto rows = lines(weil.out);
  CHECK(rows.front() == "c,m,n,real,imag,bound,pass");
  std::size_t data = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].ends_with(",true"));
    ++data;
  }
  std::size_t expected = 0;
  for (std::size_t c = 1; c <= 105; ++c) expected += c * c;
  CHECK(data == expected);

  // A tolerance nobody can meet is a verification failure.
  const auto strict = run({"verify-identity", "--qmax", "13", "--n", "50", "--seq", "random", "--seed", "1", "--tol", "-1"});
  CHECK(strict.code == 1);
  CHECK(strict.err.find("q=") != std::string::npos);
}

TEST_CASE("verify-identity output") {
  const auto r = run({"verify-identity", "--qmax", "7", "--n", "1", "--m", "5", "--seq", "ones"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "q,character_side,congruence_side,rel_discrepancy,pass");
  CHECK(rows.size() == 1 + 4 + 1);
  CHECK(rows.back().starts_with("total,"));
  const auto q5 = split(rows[3]);
  CHECK(q5[0] == "5");
  CHECK(std::stod(q5[1]) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(q5[2] == "5");
}

TEST_CASE("characters and small verbs") {
  auto r = run({"characters", "--p", "5", "--a", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).front() == "p,a,members,phi_p,generator");
  r = run({"characters", "--p", "3", "--a", "1", "--dump"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1 + 2 * 6);
  CHECK(run({"characters", "--p", "9"}).code == 2);

  r = run({"kloosterman", "--c", "5", "--m", "1", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out)[1].starts_with("5,1,1,0.38196601125"));

  r = run({"ramanujan-grid", "--qmax", "30", "--lmax", "40"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1 + 30 * 41);

  r = run({"factor-check", "--trials", "20", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 21);

  r = run({"extremal", "--qmax", "3", "--n", "2"});
  CHECK(r.code == 0);
  const auto cells = split(lines(r.out)[1]);
  CHECK(std::abs(std::stod(cells[3]) - 5.0) <= 1e-9);
  CHECK(cells[5] == "true");
}

TEST_CASE("csv and json mirror") {
  const auto csv = scratch("scan.csv");
  const auto js = scratch("scan.json");
  const auto r = run({"scan", "--qlist", "5,10", "--nlist", "1,16", "--m", "6", "--out", csv.string(), "--json",
                      js.string(), "--threads", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 5);
  CHECK(rows.front() == "Q,N,M,lambda_max,trivial_envelope,theorem_envelope,ratio_trivial,ratio_theorem,regime");
  CHECK(rows[1].starts_with("5,1,6,10,16,"));
  CHECK(rows[1].ends_with(",trivial"));

  const auto doc = nlohmann::json::parse(read_file(js));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  CHECK(doc[0]["Q"] == 5);
  CHECK(doc[0]["N"] == 1);
  CHECK(doc[0]["lambda_max"].get<double>() == doctest::Approx(10.0));
  CHECK(doc[0]["ratio_trivial"].get<double>() == doctest::Approx(0.625));
  CHECK(doc[3]["regime"].is_string());
  for (const auto& row : doc) CHECK(row.size() == 9);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::string> base{"scan", "--qlist", "10,20,30", "--nlist", "32,64", "--threads"};
  auto a = base, b = base;
  a.push_back("1");
  b.push_back("4");
  CHECK(run(a).out == run(b).out);

  const std::vector<std::string> ident{"verify-identity", "--qmax", "31", "--n", "150", "--seq", "random",
                                       "--seed", "3", "--threads"};
  a = ident;
  b = ident;
  a.push_back("1");
  b.push_back("5");
  CHECK(run(a).out == run(b).out);

  ::setenv("SIEVELAB_THREADS", "3", 1);
  CHECK(resolve_threads(std::nullopt) == 3);
  CHECK(resolve_threads(7U) == 7);
  ::setenv("SIEVELAB_THREADS", "zero", 1);
  CHECK(resolve_threads(std::nullopt) >= 1);
  ::unsetenv("SIEVELAB_THREADS");
}
