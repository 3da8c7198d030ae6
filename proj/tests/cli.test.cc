// Copyright 2026 The hhlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string output;
};

Outcome invoke(const std::string &args) {
    std::string cmd = std::string(HHLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) {
        out.append(buf, n);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    auto d = fs::temp_directory_path() / ("hhlab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and bounds") {
    auto help = invoke("--help");
    CHECK(help.code == 0);
    for (const char *sub : {"sweep", "set", "n4", "bounds", "describe", "plot-data"}) {
        CHECK(help.output.find(sub) != std::string::npos);
    }
    auto b = invoke("bounds --kappa 2 --t0 18.85 --k 3 --l 5");
    CHECK(b.code == 0);
    CHECK(b.output.find("0.617160") != std::string::npos);
    CHECK(b.output.find("38.3% tighter") != std::string::npos);
}

TEST_CASE("sweep writes csv and json") {
    auto dir = scratch_dir();
    auto r = invoke("sweep --count 5 --jobs 2 --out " + (dir / "s.csv").string());
    CHECK(r.code == 0);
    CHECK(r.output.find("enhanced") != std::string::npos);
    auto csv = slurp(dir / "s.csv");
    CHECK(csv.rfind("# hhlab", 0) == 0);
    CHECK(fs::exists(dir / "s.json"));
    auto p = invoke("plot-data --csv " + (dir / "s.csv").string() + " --out " + (dir / "p.csv").string());
    CHECK(p.code == 0);
    CHECK(slurp(dir / "p.csv").rfind("lambda,", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("run flags") {
    CHECK(invoke("set --lambdas 0.2,0.3 --variant enhanced --t0-mode iterative --readout swap --shots 1024").code == 0);
    CHECK(invoke("set --lambdas 0.25 --t0-mode explicit=6pi --angle-policy paper --alpha exact").code == 0);
    CHECK(invoke("n4 --seeds 1 --variant hybrid --readout direct --signed auto").code == 0);
    CHECK(invoke("sweep --count 2 --noise-p 0.01 --seed 4").code == 0);
    auto d = invoke("describe --lambda 0.01 --k 3");
    CHECK(d.code == 0);
    CHECK(d.output.find("kappa 99") != std::string::npos);
}

TEST_CASE("config file") {
    auto dir = scratch_dir();
    std::ofstream(dir / "c.json") << R"({"name": "cfg", "source": "n2-set", "lambdas": [0.2], "variants": ["canonical"]})";
    auto r = invoke("set --config " + (dir / "c.json").string());
    CHECK(r.code == 0);
    CHECK(r.output.find("1 row") != std::string::npos);
    std::ofstream(dir / "bad.json") << R"({"nonsense": true})";
    CHECK(invoke("set --config " + (dir / "bad.json").string()).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("exit codes for bad input") {
    CHECK(invoke("").code == 2);
    CHECK(invoke("frobnicate").code == 2);
    CHECK(invoke("sweep --k 0").code == 2);
    CHECK(invoke("sweep --variant quantum").code == 2);
    CHECK(invoke("sweep --t0-mode sometimes").code == 2);
    CHECK(invoke("set --lambdas 0.7").code == 2);
    CHECK(invoke("bounds --kappa 0.5 --t0 1").code == 2);
    CHECK(invoke("plot-data --csv /nonexistent/x.csv --out /tmp/never.csv").code != 0);
    CHECK(invoke("sweep --count 2 --out /nonexistent_dir/x.csv").code == 3);
}

}  // TEST_SUITE
