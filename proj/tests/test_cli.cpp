#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "rmtheta/cli.hpp"
#include "rmtheta/io.hpp"
#include "rmtheta/relation_eval.hpp"
#include "rmtheta/relation_sets.hpp"

using namespace rmtheta;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kExample = RMTHETA_DATA_DIR "/example/";

class TempDir {
public:
    explicit TempDir(const std::string &tag) : path_(fs::temp_directory_path() / ("rmtheta_" + tag)) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string &name) const { return path_ / name; }
    const fs::path &path() const { return path_; }

private:
    fs::path path_;
};

std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("relations command") {
    Run r = run({"relations", "--set", "mumford"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 26);
    CHECK(run({"relations", "--set", "mumford"}).out == r.out);

    TempDir tmp("relations");
    Run rm = run({"relations", "--set", "rm", "--out", (tmp / "rm.txt").string()});
    CHECK(rm.code == 0);
    CHECK(rm.out.empty());
    RelationSet parsed = parse_relations(read_file(tmp / "rm.txt"), Provenance::RM);
    RelationSet block = parse_relations(read_file(kExample + "correspondence.txt"), Provenance::RM);
    CHECK(block.size() == 3);
    for (const auto &c : block)
        CHECK(span_contains(c, parsed));

    Run bad = run({"relations", "--set", "bogus"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("UnknownSet") != std::string::npos);
}

TEST_CASE("verify command") {
    for (const char *set : {"mumford", "rm", "rm-bilinear"}) {
        Run r = run({"verify", "--field", kExample + "field_p8.txt", "--point", kExample + "point4.txt", "--set", set});
        CHECK_MESSAGE(r.code == 0, set);
        CHECK(r.out.find("OVERALL PASS") != std::string::npos);
    }
    Run sp = run({"verify", "--field", kExample + "field_p8.txt", "--point", kExample + "point4.txt", "--set",
                  "split-product"});
    CHECK(sp.code == 1);
    CHECK(sp.out.find("sp01 FAIL") != std::string::npos);

    TempDir tmp("verify");
    write_file(tmp / "f7.txt", "prime 7\n");
    std::string ones;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            ones += "a " + std::to_string(i) + " " + std::to_string(j) + " 1\n";
    write_file(tmp / "ones.txt", ones);
    // All-ones point, outcome recorded by direct evaluation.
    Run r = run({"verify", "--field", (tmp / "f7.txt").string(), "--point", (tmp / "ones.txt").string(), "--set", "rm"});
    CHECK(r.code == 0);
    CHECK(r.out == "rm01 PASS\nrm02 PASS\nrm03 PASS\nOVERALL PASS (3/3 relations vanish)\n");

    write_file(tmp / "bad.txt", "a 0 0 1\na 0 9 1\n");
    CHECK(run({"verify", "--field", (tmp / "f7.txt").string(), "--point", (tmp / "bad.txt").string()}).code == 2);
    CHECK(run({"verify", "--field", (tmp / "nope.txt").string(), "--point", (tmp / "ones.txt").string()}).code == 2);
    write_file(tmp / "f9.txt", "prime 9\n");
    CHECK(run({"verify", "--field", (tmp / "f9.txt").string(), "--point", (tmp / "ones.txt").string()}).code == 2);
    write_file(tmp / "red.txt", "prime 7\next t 1 0 1 0 1\n"); // t^4 + t^2 + 1 = (t^2 + t + 1)(t^2 - t + 1)
    Run red = run({"verify", "--field", (tmp / "red.txt").string(), "--point", (tmp / "ones.txt").string(),
                   "--check-irreducible"});
    CHECK(red.code == 2);
    CHECK(red.err.find("Reducible") != std::string::npos);
}

TEST_CASE("down, rosenhain and up commands") {
    TempDir tmp("down");
    Run d = run({"down", "--field", kExample + "field_p8.txt", "--point", kExample + "point4.txt", "--out",
                 (tmp / "b.txt").string()});
    CHECK(d.code == 0);
    std::string level2 = read_file(tmp / "b.txt");
    CHECK(level2.find("# consistent yes") != std::string::npos);

    Run r = run({"rosenhain", "--field", kExample + "field_p8.txt", "--point", (tmp / "b.txt").string()});
    CHECK(r.code == 0);
    Field f = parse_field(read_file(kExample + "field_p8.txt"));
    std::string want = format_curve(parse_curve(read_file(kExample + "curve_p8.txt"), f));
    CHECK(r.out.find(want) != std::string::npos);

    Run u = run({"up", "--field", kExample + "field_p8.txt", "--point", (tmp / "b.txt").string()});
    CHECK(u.code == 0);
    ThetaPoint4 p = parse_point4(read_file(kExample + "point4.txt"), f);
    CHECK(u.out.find(format_point4(p.normalized())) != std::string::npos);

    write_file(tmp / "f101.txt", "prime 101\n");
    write_file(tmp / "curve.txt", "rosenhain 5 17 42\n");
    Run t = run({"thomae", "--field", (tmp / "f101.txt").string(), "--curve", (tmp / "curve.txt").string()});
    CHECK(t.code == 1);
    CHECK(t.out.find("# 0 level-2 points") != std::string::npos);
    write_file(tmp / "branch.txt", "branch 0 1 2 3 4 5\n");
    Run tb = run({"thomae", "--field", (tmp / "f101.txt").string(), "--curve", (tmp / "branch.txt").string()});
    CHECK((tb.code == 0 || tb.code == 1));
}

TEST_CASE("rm-test command") {
    Run r = run({"rm-test", "--field", kExample + "field_p8.txt", "--curve", kExample + "curve_p8.txt"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("POSITIVE\n", 0) == 0);
    Field f = parse_field(read_file(kExample + "field_p8.txt"));
    // The witness is a valid point file.
    ThetaPoint4 w = parse_point4(r.out.substr(r.out.find('\n') + 1), f);
    CHECK(all_vanish(rm_relations(), Assignment::from_point(w), f));

    TempDir tmp("rmtest");
    write_file(tmp / "f101.txt", "prime 101\n");
    write_file(tmp / "curve.txt", "rosenhain 5 17 42\n");
    Run small = run({"rm-test", "--field", (tmp / "f101.txt").string(), "--curve", (tmp / "curve.txt").string()});
    CHECK(small.code == 2);
    CHECK(small.err.find("FieldTooSmall") != std::string::npos);
    Run capped = run({"rm-test", "--field", (tmp / "f101.txt").string(), "--curve", (tmp / "curve.txt").string(),
                      "--auto-extend", "--max-orderings", "1"});
    // One ordering over F_101^4: the first step of the frozen exhaustive search.
    CHECK(capped.code == 1);
    CHECK(capped.out.rfind("NEGATIVE\n", 0) == 0);
    CHECK(run({"rm-test", "--max-orderings", "0"}).code == 2);
}

TEST_CASE("selftest-example command") {
    Run ok = run({"selftest-example"});
    CHECK(ok.code == 0);
    CHECK(count_lines(ok.out) == 4);

    TempDir tmp("selftest");
    fs::create_directories(tmp / "example");
    for (const auto &e : fs::directory_iterator(kExample))
        fs::copy_file(e.path(), tmp.path() / "example" / e.path().filename());
    CHECK(run({"selftest-example", "--data", tmp.path().string()}).code == 0);

    // Change one coefficient of a(0,1).
    std::string point = read_file(tmp / "example/point4.txt");
    auto pos = point.find("a 0 1 [0,0,0,");
    REQUIRE(pos != std::string::npos);
    pos += std::string("a 0 1 [0,0,0,").size();
    point[pos] = point[pos] == '1' ? '2' : '1';
    write_file(tmp / "example/point4.txt", point);
    Run tampered = run({"selftest-example", "--data", tmp.path().string()});
    CHECK(tampered.code == 1);
    CHECK(tampered.out.find("A1 FAIL relation m") != std::string::npos);

    fs::remove(tmp / "example/curve_p2.txt");
    Run missing = run({"selftest-example", "--data", tmp.path().string()});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("curve_p2.txt") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("rm-test") != std::string::npos);
}
