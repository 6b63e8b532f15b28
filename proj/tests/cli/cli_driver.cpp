// Exercises the command-line interface of the verifier binary: exit codes,
// stdin models, piping gen into verify, and diagnostics for malformed input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int failures = 0;
std::string tool;
std::filesystem::path workdir;

int run(std::string const& cmd) {
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

void expect_exit(std::string const& what, std::string const& cmd, int want) {
    int got = run(cmd);
    if (got != want) {
        ++failures;
        std::cout << "[FAIL] " << what << ": exit " << got << ", want " << want << "\n  " << cmd
                  << "\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

std::string slurp(std::filesystem::path const& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void expect_contains(std::string const& what, std::filesystem::path const& file,
                     std::string const& needle) {
    if (slurp(file).find(needle) == std::string::npos) {
        ++failures;
        std::cout << "[FAIL] " << what << ": output misses '" << needle << "'\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_driver <path-to-plift>\n";
        return 2;
    }
    tool = argv[1];
    workdir = std::filesystem::temp_directory_path() /
              ("plift-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(workdir);
    auto path = [&](std::string const& name) { return (workdir / name).string(); };

    expect_exit("gen writes a model", tool + " gen chain > " + path("chain.pmc"), 0);

    std::string const region = " -r \"0.3<=p<=0.6, 0.6<=q<=0.7\" ";

    expect_exit("satisfied query exits 0",
                tool + " verify -m " + path("chain.pmc") + region +
                    "-p 'P<0.2 [F \"good\"]' > " + path("sat.out"),
                0);

    expect_exit("violated query exits 1",
                tool + " verify -m " + path("chain.pmc") + region +
                    "-p 'P<0.15 [F \"good\"]' > " + path("refuted.out"),
                1);
    expect_contains("witness is printed", path("refuted.out"), "witness");

    expect_exit("budget exhaustion exits 2",
                tool + " verify -m " + path("chain.pmc") + " -r \"0<=p<=1, 0<=q<=1\"" +
                    " -p 'P<0.2602 [F \"good\"]' --bigstep off --max-regions 3 > " +
                    path("unknown.out"),
                2);

    expect_exit("generated family pipes into verification",
                tool + " gen dn --n 24 | " + tool +
                    " verify -r \"$(python3 -c \"print(', '.join('0<=p%d<=1/12' % i for i in "
                    "range(1,24)))\")\" -p 'P>=0.01 [F \"good\"]' --json > " +
                    path("dn.out"),
                0);
    expect_contains("one region suffices", path("dn.out"), "\"regions_checked\":1");

    std::ofstream(path("broken.pmc")) << "states a good\ninit a\ntarget good\ntrans a b : 1\n";
    expect_exit("malformed model exits 3",
                tool + " verify -m " + path("broken.pmc") + region + "-p 'P<0.2 [F \"good\"]'" +
                    " 2> " + path("broken.err"),
                3);
    expect_contains("diagnostic names the line", path("broken.err"), "4");

    expect_exit("region naming an unknown parameter exits 3",
                tool + " verify -m " + path("chain.pmc") +
                    " -r \"0<=z<=1\" -p 'P<0.2 [F \"good\"]' 2> /dev/null",
                3);

    expect_exit("malformed property exits 3",
                tool + " verify -m " + path("chain.pmc") + region + "-p 'P=0.2 [F \"good\"]'" +
                    " 2> /dev/null",
                3);

    expect_exit("transform emits a parseable model",
                tool + " transform -m " + path("chain.pmc") + " > " + path("t1.pmc") + " && " +
                    tool + " transform -m " + path("t1.pmc") + " > " + path("t2.pmc") +
                    " && diff -q " + path("t1.pmc") + " " + path("t2.pmc"),
                0);

    expect_exit("substitute prints the interval model",
                tool + " substitute -m " + path("t1.pmc") + region + "> " + path("sub.imc"), 0);
    expect_contains("exact merged interval", path("sub.imc"), "[21/100, 1/4]");

    expect_exit("analyze-imc reports the reachability interval",
                tool + " analyze-imc -m " + path("sub.imc") + " > " + path("analyze.out"), 0);
    expect_contains("interval on stdout", path("analyze.out"), "reachability interval");

    expect_exit("dump-regions writes one record per decided region",
                tool + " verify -m " + path("chain.pmc") + region +
                    "-p 'P<0.2 [F \"good\"]' --bigstep off --dump-regions " + path("dump.jsonl") +
                    " > /dev/null",
                0);
    expect_contains("dump holds verdict records", path("dump.jsonl"), "\"status\":\"sat\"");

    std::filesystem::remove_all(workdir);
    if (failures == 0) {
        std::cout << "cli: all checks passed\n";
        return 0;
    }
    std::cout << "cli: " << failures << " checks failed\n";
    return 1;
}
