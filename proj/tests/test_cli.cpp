#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "skeinlab/cli.hpp"

using namespace skeinlab;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SKEINLAB_DATA_DIR) + "/" + name; }

class TempDir {
  public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("skeinlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
    static inline int counter_ = 0;
};

}  // namespace

TEST(Cli, Symbols) {
    EXPECT_EQ(run_cli({"symbols", "theta", "2", "2", "2"}).out, "-3\n");
    EXPECT_EQ(run_cli({"symbols", "delta", "3"}).out, "-4\n");
    EXPECT_EQ(run_cli({"symbols", "tet", "2", "2", "2", "2", "2", "2"}).out, "3/2\n");
    EXPECT_EQ(run_cli({"symbols", "disks", "1", "1", "1", "1"}).out, "3/2\n");
    EXPECT_EQ(run_cli({"symbols", "disks", "1", "1", "1"}).out, "-3\n");
    EXPECT_EQ(run_cli({"symbols", "disks", "1", "1", "1", "--unsigned"}).out, "3\n");
    EXPECT_EQ(run_cli({"symbols", "insert", "1", "1", "1", "1"}).out, "-1/2\n");
    EXPECT_EQ(run_cli({"symbols", "theta", "1", "1", "1"}).code, 2);
}

TEST(Cli, NetworkEvaluation) {
    auto r = run_cli({"net", "eval", "--method", "auto", data("theta_222.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "-3\n");
    EXPECT_NE(r.err.find("recoupling"), std::string::npos);
    EXPECT_EQ(run_cli({"net", "eval", "--method", "brute", data("theta_222.json")}).out, "-3\n");
    EXPECT_EQ(run_cli({"net", "eval", "--method", "recoupling", data("theta_222.json")}).out, "-3\n");

    auto bad = run_cli({"net", "eval", data("vertex_111.json")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("parity"), std::string::npos);
    EXPECT_TRUE(bad.out.empty());
}

TEST(Cli, BudgetExitCode) {
    ::setenv("SKEINLAB_STATE_BUDGET", "5", 1);
    auto r = run_cli({"net", "eval", "--method", "brute", data("theta_222.json")});
    ::unsetenv("SKEINLAB_STATE_BUDGET");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("8"), std::string::npos);
}

TEST(Cli, ParseErrors) {
    EXPECT_EQ(run_cli({"net", "eval", "--bogus", data("theta_222.json")}).code, 2);
    EXPECT_EQ(run_cli({"symbols", "theta", "2", "2"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_EQ(run_cli({"net", "eval", "/nonexistent/file.json"}).code, 1);
}

TEST(Cli, DiagramEval) {
    auto r = run_cli({"diagram", "eval", data("figure_eight.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    TempDir tmp;
    write_text_file(tmp.file("bad.json"), R"({"nodes":[{"kind":"cup","ports":["a","b"]}],"wires":[["a","b"]]})");
    EXPECT_EQ(run_cli({"diagram", "eval", tmp.file("bad.json")}).code, 2);
}

TEST(Cli, PackingRoundTripOnBasicConfigurations) {
    TempDir tmp;
    struct Case {
        CirclePacking packing;
        Rational expected;
    };
    std::vector<Case> cases{{two_disk_configuration(2, 3), eval_two(2, 3)},
                            {three_disk_configuration(1, 2, 2), eval_three(1, 2, 2)},
                            {four_disk_configuration(1, 1, 1, 1), eval_four(1, 1, 1, 1)},
                            {four_disk_configuration(2, 0, 1, 3), eval_four(2, 0, 1, 3)}};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::string pk = tmp.file("pk" + std::to_string(i) + ".json");
        std::string nt = tmp.file("net" + std::to_string(i) + ".json");
        write_text_file(pk, packing_to_json(cases[i].packing).dump(1));
        auto conv = run_cli({"pack2net", pk, "--out", nt});
        ASSERT_EQ(conv.code, 0) << conv.err;
        for (const char* method : {"brute", "recoupling", "auto"}) {
            auto r = run_cli({"net", "eval", "--method", method, nt});
            EXPECT_EQ(r.code, 0) << r.err;
            EXPECT_EQ(r.out, cases[i].expected.to_string() + "\n") << i << " " << method;
        }
    }
}

TEST(Cli, GeneratorsAndOpenEnds) {
    TempDir tmp;
    ASSERT_EQ(run_cli({"ford", "gen", "--qmax", "5", "--out", tmp.file("ford.json")}).code, 0);
    auto r = run_cli({"pack2net", tmp.file("ford.json"), "--out", tmp.file("ford_net.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("open end"), std::string::npos);
    // An open network is structurally incomplete.
    EXPECT_EQ(run_cli({"net", "eval", tmp.file("ford_net.json")}).code, 2);

    auto a = run_cli({"apollonian", "gen", "--root", "-1,2,2,3", "--depth", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("\"15\""), std::string::npos);
    EXPECT_EQ(run_cli({"apollonian", "gen", "--root", "1,1,1,1", "--depth", "1"}).code, 2);
    write_text_file(tmp.file("ap.json"), a.out);
    EXPECT_EQ(run_cli({"pack2net", tmp.file("ap.json")}).code, 0);
    write_text_file(tmp.file("neg.json"), packing_to_json(two_disk_configuration(-3, 1)).dump());
    auto neg = run_cli({"pack2net", tmp.file("neg.json")});
    EXPECT_EQ(neg.code, 2);
    EXPECT_NE(neg.err.find("negative label"), std::string::npos);

    auto svg = run_cli({"render", tmp.file("ap.json")});
    EXPECT_EQ(svg.code, 0);
    EXPECT_NE(svg.out.find("<circle"), std::string::npos);
    ASSERT_EQ(run_cli({"render", tmp.file("ford.json"), "--svg", tmp.file("ford.svg")}).code, 0);
    EXPECT_TRUE(fs::exists(tmp.file("ford.svg")));
}

TEST(Cli, AnalyticCommands) {
    EXPECT_EQ(run_cli({"analytic", "eval", "--fn", "theta", "1", "1", "1"}).out, "-3+0i\n");
    EXPECT_EQ(run_cli({"analytic", "eval", "--fn", "delta", "1", "1.5"}).out, "0+3.5i\n");
    auto csv = run_cli({"analytic", "sample", "--fn", "delta", "--path", "1,x", "--range", "1:2", "--steps", "1"});
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out, "t,re,im\n1,3,0\n2,-4,0\n");
    auto pole = run_cli({"analytic", "sample", "--fn", "theta", "--path", "x,1,1", "--range", "-3:1", "--steps", "4"});
    EXPECT_EQ(pole.code, 2);
    EXPECT_NE(pole.err.find("t=-3"), std::string::npos);
    auto svg = run_cli({"analytic", "sample", "--fn", "theta", "--path", "x,x,x", "--range", "0:6", "--steps", "200",
                        "--out", "svg"});
    EXPECT_EQ(svg.code, 0);
    EXPECT_NE(svg.out.find("<polyline"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::vector<std::string>> commands{
        {"--threads", "1", "net", "eval", "--method", "brute", data("theta_222.json")},
        {"--threads", "8", "net", "eval", "--method", "brute", data("theta_222.json")},
        {"apollonian", "gen", "--root", "-1,2,2,3", "--depth", "3"},
        {"ford", "gen", "--qmax", "8"},
        {"analytic", "sample", "--fn", "delta", "--path", "1,x", "--range", "-3:7", "--steps", "1000", "--out", "svg"},
    };
    for (const auto& c : commands) {
        auto first = run_cli(c), second = run_cli(c);
        EXPECT_EQ(first.code, 0);
        EXPECT_EQ(first.out, second.out);
    }
    EXPECT_EQ(run_cli(commands[0]).out, run_cli(commands[1]).out);
}
