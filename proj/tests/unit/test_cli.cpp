// Copyright 2026 The cssep Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#ifdef CSSEP_CLI_PATH

namespace {

std::string cli() {
    return CSSEP_CLI_PATH;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string &args) {
    std::string cmd = args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string pipe(const std::string &a, const std::string &b) {
    return a + " | " + std::string(CSSEP_CLI_PATH) + " " + b;
}

TEST(Cli, EntangledExampleExitsOne) {
    CliRun r = run(pipe(cli() + " example --name entangled-rank6", "classify"));
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["rule"], "rank-6 empty product set");
}

TEST(Cli, SigmaExampleSeparable) {
    CliRun r = run(pipe(cli() + " example --name sigma --compressed", "decompose"));
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "Separable");
    EXPECT_LT(j["reconstructionError"].get<double>(), 1e-8);
}

TEST(Cli, ToeplitzScanLines) {
    CliRun r = run(cli() + " toeplitz-scan --parties 3 --samples 10 --seed 1");
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    int records = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        if (!j.contains("summary")) records++;
    }
    EXPECT_EQ(records, 10);
    EXPECT_EQ(run(cli() + " toeplitz-scan --parties 3 --samples 10 --seed 1").out, r.out);
}

TEST(Cli, MalformedJsonExitsThree) {
    EXPECT_EQ(run(pipe("echo '{oops'", "classify")).code, 3);
}

TEST(Cli, OverflowExitsThree) {
    CliRun r = run(pipe(R"(echo '{"parties": 9, "dim": 3, "format": "cs-compressed", "csEntries": []}')", "check-cs"));
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, PptAndPtrace) {
    CliRun r = run(pipe(cli() + " example --name sigma", "ppt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["ppt"].get<bool>());
    r = run(pipe(cli() + " example --name sigma", "ptrace --trace 1"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["parties"], 1);
}

TEST(Cli, GmeAndHankel) {
    CliRun r = run(pipe(cli() + " example --name nonnegative-conditioned", "gme"));
    EXPECT_EQ(r.code, 0);
    EXPECT_GT(nlohmann::json::parse(r.out)["mu"].get<double>(), 0);
    r = run(cli() + " hankel --sequence 1 0 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["vandermonde"].size(), 2u);
}

TEST(Cli, Deterministic) {
    std::string c = pipe(cli() + " example --name sigma", "classify --seed 3");
    EXPECT_EQ(run(c).out, run(c).out);
}

}  // namespace

#endif
