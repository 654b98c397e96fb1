#include <doctest.h>

#include <cmath>
#include <limits>

#include "hardy/report.hpp"

using namespace hardy;

TEST_CASE("report::pass iff margin within tolerance") {
  VerificationReport report("unit");
  report.add("inside", 0.5, 1.0);
  report.add("edge", 1.0, 1.0);
  CHECK(report.pass());
  report.add("outside", 2.0, 1.0);
  CHECK_FALSE(report.pass());
  CHECK(report.pass_count() == 2);
  CHECK(report.worst_excess() == doctest::Approx(1.0));
}

TEST_CASE("report::json round trip") {
  VerificationReport report("unit");
  report.add("a", 0.0, 0.0, {{"n", 3}}, {{"lambda", 0.25}});
  report.add("b", -1e-3, 1e-6);
  const json j = report.to_json();
  CHECK(j["version"] == kArtifactVersion);
  CHECK(j["summary"]["cases"] == 2);
  CHECK(j["summary"]["pass"] == true);
  const auto back = VerificationReport::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.cases()[0].inputs["n"] == 3);
}

TEST_CASE("report::tampered pass flag is rejected") {
  VerificationReport report("unit");
  report.add("fails", 2.0, 1.0);
  json j = report.to_json();
  j["cases"][0]["pass"] = true;
  CHECK_THROWS(VerificationReport::from_json(j));
  json k = report.to_json();
  k["summary"]["pass"] = true;
  CHECK_THROWS(VerificationReport::from_json(k));
}

TEST_CASE("report::merge prefixes names") {
  VerificationReport a("a"), b("b");
  b.add("x", 0.0, 0.0);
  a.merge(b, "C01/");
  REQUIRE(a.cases().size() == 1);
  CHECK(a.cases()[0].name == "C01/x");
}

TEST_CASE("report::non-finite values become sentinels") {
  CHECK(finite_or_sentinel(std::numeric_limits<double>::infinity()) == 1e300);
  CHECK(finite_or_sentinel(-std::numeric_limits<double>::infinity()) == -1e300);
  CHECK(std::abs(finite_or_sentinel(std::nan(""))) == 1e300);
  CHECK(finite_or_sentinel(1.5) == 1.5);
  VerificationReport report("unit");
  report.add("nan", std::nan(""), 1.0);
  CHECK_NOTHROW(report.to_json().dump());
  CHECK_FALSE(report.pass());
}
