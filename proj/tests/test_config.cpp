// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "thetacross/config.hpp"

using namespace thetacross;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("defaults carry the full-scale certificate parameters") {
  RunConfig c;
  CHECK(c.bound_a == 30610046000.0);
  CHECK(c.bound_t == 6970346000.0);
  CHECK(c.bound_alpha == 1153308722614227968.0);
  CHECK(c.bound_eta == 933831.0 / 17592186044416.0);
  CHECK(c.bound_omega == 727.951332655);
  CHECK(c.bound_eta0 == 0.0);
  CHECK(c.scan_step == 5e-6);
  CHECK(c.workers == 1);
  CHECK(c.zeros_format == "text");

  std::string s = serialize_config(c);
  CHECK_THAT(s, ContainsSubstring("bound.omega=727.951332655\n"));
  CHECK_THAT(s, ContainsSubstring("scan.step=5e-06\n"));
  CHECK_THAT(s, ContainsSubstring("sieve.bound=1000000000\n"));
  CHECK_THAT(s, ContainsSubstring("workers=1\n"));
  CHECK(parse_config("", "empty") == RunConfig{});
}

TEST_CASE("serialize and parse are lossless inverses") {
  RunConfig c;
  c.zeros_path = "full table v2.packed";
  c.zeros_format = "packed";
  c.zeros_accuracy = 0.1;
  c.bound_eta = 933831.0 / 17592186044416.0;
  c.bound_omega = 727.9513326550001;
  c.scan_step = 5e-324;
  c.scan_lo = 1.0 / 3.0;
  c.sieve_bound = 139000000000000000ull;
  c.sieve_segment = 18446744073709551615ull;
  c.out_path = "";
  c.workers = 4096;

  std::string s = serialize_config(c);
  RunConfig back = parse_config(s, "roundtrip");
  CHECK(back == c);
  CHECK(serialize_config(back) == s);
}

TEST_CASE("parse handles comments, spacing, crlf, and values with equals") {
  std::string text =
      "# leading comment\r\n"
      "\r\n"
      "  bound.t = 5000000000 \r\n"
      "out.path=runs/a=b c.csv\n"
      "\t# indented comment\n"
      "workers=3\n";
  RunConfig c = parse_config(text, "mix.cfg");
  CHECK(c.bound_t == 5000000000.0);
  CHECK(c.out_path == "runs/a=b c.csv");
  CHECK(c.workers == 3);
  CHECK(c.bound_omega == 727.951332655);
}

TEST_CASE("unknown keys are hard errors with a nearest-key hint") {
  CHECK_THROWS_MATCHES(parse_config("scan.stpe=1e-6\n", "t.cfg"), std::invalid_argument,
                       Catch::Matchers::MessageMatches(ContainsSubstring("t.cfg:1") &&
                                                       ContainsSubstring("'scan.stpe'") &&
                                                       ContainsSubstring("did you mean 'scan.step'")));
  CHECK_THROWS_MATCHES(parse_config("workerz=2\n", "t.cfg"), std::invalid_argument,
                       Catch::Matchers::MessageMatches(ContainsSubstring("did you mean 'workers'")));
  CHECK_THROWS_MATCHES(parse_config("plot.colors=red\n", "t.cfg"), std::invalid_argument,
                       Catch::Matchers::MessageMatches(ContainsSubstring("unknown config key") &&
                                                       !ContainsSubstring("did you mean")));
}

TEST_CASE("errors name the offending line") {
  std::string text = "workers=2\n# fine\nbound.t=fast\n";
  CHECK_THROWS_WITH(parse_config(text, "lines.cfg"),
                    ContainsSubstring("lines.cfg:3") && ContainsSubstring("'fast'"));
  CHECK_THROWS_WITH(parse_config("workers=1\nworkers=2\n", "d.cfg"),
                    ContainsSubstring("d.cfg:2") && ContainsSubstring("duplicate key 'workers'"));
  CHECK_THROWS_WITH(parse_config("workers 3\n", "e.cfg"), ContainsSubstring("expected key=value"));
  CHECK_THROWS_WITH(parse_config("=3\n", "e.cfg"), ContainsSubstring("empty key"));
}

TEST_CASE("counts accept exact scientific forms and reject lossy ones") {
  CHECK(parse_config("sieve.bound=1e9\n", "c").sieve_bound == 1000000000ull);
  CHECK(parse_config("sieve.bound=1.39e17\n", "c").sieve_bound == 139000000000000000ull);
  CHECK(parse_config("sieve.bound=12345678901234567.0\n", "c").sieve_bound ==
        12345678901234567ull);
  CHECK(parse_config("sieve.segment=18446744073709551615\n", "c").sieve_segment ==
        18446744073709551615ull);
  CHECK_THROWS_WITH(parse_config("workers=3.5\n", "c"), ContainsSubstring("whole number"));
  CHECK_THROWS_WITH(parse_config("workers=-2\n", "c"), ContainsSubstring("whole number"));
  CHECK_THROWS_WITH(parse_config("sieve.bound=2e19\n", "c"), ContainsSubstring("whole number"));
  CHECK_THROWS_WITH(parse_config("sieve.bound=1e400\n", "c"), ContainsSubstring("whole number"));
  CHECK_THROWS_WITH(parse_config("sieve.bound=1e5000\n", "c"), ContainsSubstring("not a finite"));
  CHECK_THROWS_WITH(parse_config("workers=\n", "c"), ContainsSubstring("not a finite"));
}

TEST_CASE("reals reject non-numbers and infinities") {
  CHECK_THROWS_WITH(parse_config("bound.eta=inf\n", "c"), ContainsSubstring("not a finite"));
  CHECK_THROWS_WITH(parse_config("bound.eta=nan\n", "c"), ContainsSubstring("not a finite"));
  CHECK_THROWS_WITH(parse_config("bound.eta=1e999\n", "c"), ContainsSubstring("not a finite"));
  CHECK(parse_config("zeros.t_max=-3\n", "c").zeros_t_max == -3.0);
}

TEST_CASE("enumerated and text values are vetted") {
  CHECK(parse_config("zeros.format=packed\n", "c").zeros_format == "packed");
  CHECK_THROWS_WITH(parse_config("zeros.format=binary\n", "c"),
                    ContainsSubstring("'text' or 'packed'"));
  RunConfig c;
  CHECK_THROWS_WITH(set_key(c, "out.path", "a\tb", "x"), ContainsSubstring("control character"));
}

TEST_CASE("later set_key wins over file values") {
  RunConfig c = parse_config("workers=4\nbound.omega=700\n", "f.cfg");
  CHECK(c.workers == 4);
  set_key(c, "workers", "9", "--workers");
  set_key(c, "bound.omega", "727.951332655", "--omega");
  CHECK(c.workers == 9);
  CHECK(c.bound_omega == 727.951332655);
}

TEST_CASE("zero-table paths resolve against the environment directory") {
  CHECK(resolve_zeros_path("zeros.txt", "/data") == "/data/zeros.txt");
  CHECK(resolve_zeros_path("zeros.txt", "/data/") == "/data/zeros.txt");
  CHECK(resolve_zeros_path("/abs/z.txt", "/data") == "/abs/z.txt");
  CHECK(resolve_zeros_path("zeros.txt", nullptr) == "zeros.txt");
  CHECK(resolve_zeros_path("zeros.txt", "") == "zeros.txt");
  CHECK(resolve_zeros_path("", "/data") == "");
  CHECK(resolve_zeros_path("sub/z.txt", "/data") == "sub/z.txt");
  CHECK(resolve_zeros_path("./z.txt", "/data") == "./z.txt");
}

TEST_CASE("config files load from disk and replay") {
  std::string path = std::string(std::tmpnam(nullptr)) + ".cfg";
  {
    std::ofstream f(path, std::ios::binary);
    f << "# run overrides\nsieve.bound=1e7\nsieve.segment=1e6\nledger.path=run7.ledger\n";
  }
  RunConfig c = load_config(path);
  CHECK(c.sieve_bound == 10000000ull);
  CHECK(c.sieve_segment == 1000000ull);
  CHECK(c.ledger_path == "run7.ledger");

  std::string resolved = path + ".resolved";
  { std::ofstream f(resolved, std::ios::binary); f << serialize_config(c); }
  CHECK(load_config(resolved) == c);
  std::remove(path.c_str());
  std::remove(resolved.c_str());

  CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), std::runtime_error);
}
