#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/cli.hpp"
#include "qcorr/error.hpp"
#include "qcorr/io.hpp"

using namespace qcorr;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0.0");
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(0.262483183763734) == "0.262483183764");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("state descriptors") {
  const auto w = parse_state(std::string(R"({"family":"werner","z":0.5})"));
  CHECK(w.is_werner());
  CHECK(w.bell_params()->c == std::array<double, 3>{-0.5, -0.5, -0.5});
  const auto b = parse_state(std::string(R"({"family":"bell_diagonal","c":[0.3,-0.4,0.56]})"));
  CHECK(b.is_bell_diagonal());
  CHECK(parse_state(to_json(b)).bell_params()->c == b.bell_params()->c);

  nlohmann::json raw;
  raw["family"] = "raw";
  for (int i = 0; i < 16; ++i) raw["matrix"].push_back({i % 5 == 0 ? 0.25 : 0.0, 0.0});
  const auto r = parse_state(raw);
  CHECK_FALSE(r.bell_params().has_value());
  CHECK(r.state().matrix()(2, 2).real() == 0.25);

  CHECK_THROWS_AS(parse_state(std::string("{")), DomainError);
  CHECK_THROWS_AS(parse_state(std::string(R"({"family":"ghz"})")), DomainError);
  CHECK_THROWS_AS(parse_state(std::string(R"({"family":"bell_diagonal","c":[0.3]})")), DomainError);
  CHECK_THROWS_AS(parse_state(std::string(R"({"family":"bell_diagonal","c":[0.9,0.9,0.9]})")).state(), DomainError);
}

TEST_CASE("result JSON round trip") {
  const auto r = measure_numeric(MeasureKind::SuperDiscord, werner({0.4}), WeakStrength::finite(0.7));
  const auto back = result_from_json(to_json(r));
  CHECK(back.kind == r.kind);
  CHECK(back.value == r.value);
  CHECK(back.method == r.method);
  REQUIRE(back.x);
  CHECK(*back.x == 0.7);
  REQUIRE(back.optimal_basis);
  CHECK(back.optimal_basis->n()[2] == doctest::Approx(r.optimal_basis->n()[2]).epsilon(1e-15));
}

TEST_CASE("CSV tables") {
  Table t{{"z", "x", "p", "discord"}, {{0.5, INFINITY, 0.0, 0.25}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "z,x,p,discord\n0.5,inf,0.0,0.25\n");
}

TEST_CASE("cli compute") {
  auto r = run({"compute", "--werner", "0.5", "--measure", "discord"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("0.262483183764") != std::string::npos);

  r = run({"compute", "--bell", "0.3,-0.4,0.56", "--measure", "super-discord", "--x", "2.5", "--format", "json"});
  CHECK(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.13248842268368688).epsilon(1e-12));

  r = run({"compute", "--werner", "0.5", "--measure", "discord", "--method", "both", "--format", "csv"});
  CHECK(r.code == cli::kExitOk);

  r = run({"compute", "--bell", "0.9,0.9,0.9", "--measure", "discord"});
  CHECK(r.code == cli::kExitComputation);
  CHECK(r.err.find("lambda5") != std::string::npos);

  CHECK(run({"compute", "--measure", "discord"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--werner", "0.5", "--measure", "entanglement"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("cli channel, sweep, surface, selfcheck") {
  auto r = run({"channel", "--werner", "0.5", "--measure", "discord", "--p", "0.3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("0.0588051302434") != std::string::npos);
  CHECK(run({"channel", "--werner", "0.5", "--measure", "discord", "--p", "1.5"}).code == cli::kExitComputation);

  r = run({"sweep", "--family", "werner", "--measures", "discord", "--z", "0.1:0.3:0.1", "--x", "inf"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("z,x,p,discord\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

  r = run({"surface", "--measure", "discord", "--resolution", "16"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("c1,c2,c3,residual\n", 0) == 0);
  CHECK(run({"surface", "--measure", "discord", "--target", "0"}).code == cli::kExitComputation);

  r = run({"selfcheck", "--samples", "3"});
  CHECK(r.code == cli::kExitOk);
}
