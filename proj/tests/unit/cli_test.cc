// Copyright 2026 The mixrg Authors
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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

std::filesystem::path scratch_dir(const std::string &name) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / ("mixrg_cli_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(MIXRG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(cli, exit_codes) {
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli(""), 1);
    EXPECT_EQ(run_cli("verify --suite nope"), 1);
    EXPECT_EQ(run_cli("rg-decoder sweep --set rg.L=48"), 1);
    EXPECT_EQ(run_cli("decode sweep --set decode.typo=1"), 1);
    EXPECT_EQ(run_cli("flow --config /nonexistent/file"), 1);
    EXPECT_EQ(run_cli("verify --suite matching-oracle --inject-weight-bug"), 2);
}

TEST(cli, verify_writes_report) {
    std::filesystem::path dir = scratch_dir("verify");
    EXPECT_EQ(run_cli("lab verify --out " + dir.string()), 0);
    std::string report = read_file(dir / "verify-lab.json");
    EXPECT_NE(report.find("\"passed\": true"), std::string::npos);
}

TEST(cli, sweeps_identical_across_worker_counts) {
    std::filesystem::path dir = scratch_dir("workers");
    std::ofstream(dir / "rg.cfg") << "rg.p = 0.03, 0.05\nrg.L = 32\nrg.levels = 3\nrg.N = 40\nseed = 5\n";
    for (int w : {1, 4}) {
        std::string out = (dir / ("w" + std::to_string(w))).string();
        ASSERT_EQ(run_cli("rg-decoder sweep --config " + (dir / "rg.cfg").string() + " --workers " +
                          std::to_string(w) + " --out " + out),
                  0);
        ASSERT_EQ(run_cli("tmwpm sweep --set tmwpm.N=8 --set tmwpm.a=2 --seed 5 --workers " + std::to_string(w) +
                          " --out " + out),
                  0);
    }
    EXPECT_EQ(read_file(dir / "w1" / "rg.csv"), read_file(dir / "w4" / "rg.csv"));
    EXPECT_EQ(read_file(dir / "w1" / "tmwpm.csv"), read_file(dir / "w4" / "tmwpm.csv"));
    EXPECT_FALSE(read_file(dir / "w1" / "rg.csv").empty());
}

TEST(cli, environment_overrides_config_file) {
    std::filesystem::path dir = scratch_dir("env");
    std::ofstream(dir / "flow.cfg") << "flow.levels = 2\nflow.x0 = 0.1\n";
    std::string out = (dir / "out").string();
    ASSERT_EQ(run_cli("flow --config " + (dir / "flow.cfg").string() + " --out " + out), 0);
    std::string two = read_file(dir / "out" / "flow.csv");
    setenv("MIXRG_FLOW_LEVELS", "4", 1);
    ASSERT_EQ(run_cli("flow --config " + (dir / "flow.cfg").string() + " --out " + out), 0);
    unsetenv("MIXRG_FLOW_LEVELS");
    std::string four = read_file(dir / "out" / "flow.csv");
    auto lines = [](const std::string &s) {
        return std::count(s.begin(), s.end(), '\n');
    };
    EXPECT_EQ(lines(two), 4);
    EXPECT_EQ(lines(four), 6);
}
