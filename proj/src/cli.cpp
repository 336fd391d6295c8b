#include "rmtheta/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>

#include "rmtheta/index.hpp"
#include "rmtheta/io.hpp"
#include "rmtheta/pipeline.hpp"
#include "rmtheta/relation_eval.hpp"
#include "rmtheta/relation_sets.hpp"

namespace rmtheta::cli {

namespace {

struct Options {
    std::string field, point, curve, set = "mumford", out, data;
    std::size_t max_orderings = SearchConfig{}.max_orderings;
    std::size_t max_candidates = SearchConfig{}.max_candidates;
    bool check_irreducible = false;
    bool auto_extend = false;
};

class Output {
public:
    Output(const std::string &path, std::ostream &out) : path_(path), out_(out) {}
    std::ostream &stream() { return path_.empty() ? out_ : buf_; }
    void flush() {
        if (!path_.empty())
            write_file(path_, buf_.str());
    }

private:
    std::string path_;
    std::ostream &out_;
    std::ostringstream buf_;
};

Field load_field(const Options &o) {
    if (o.field.empty())
        throw Error(Errc::Io, "--field is required");
    return parse_field(read_file(o.field), o.check_irreducible);
}

std::string need(const std::string &value, const char *flag) {
    if (value.empty())
        throw Error(Errc::Io, std::string(flag) + " is required");
    return value;
}

int cmd_relations(const Options &o, std::ostream &out) {
    RelationSet rs = relation_set_by_name(o.set);
    Output w(o.out, out);
    w.stream() << rs.serialize();
    w.flush();
    return kOk;
}

int cmd_verify(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    ThetaPoint4 p = parse_point4(read_file(need(o.point, "--point")), f);
    RelationSet rs = relation_set_by_name(o.set);
    VerificationReport r = verify(p, rs);
    Output w(o.out, out);
    w.stream() << r.to_text();
    w.flush();
    return r.passed ? kOk : kNegative;
}

int cmd_thomae(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    RosenhainCurve c = parse_curve(read_file(need(o.curve, "--curve")), f);
    auto r = thomae_squares(c.branch_points());
    Output w(o.out, out);
    for (std::size_t k = 0; k < 4; ++k)
        w.stream() << "# r" << k + 1 << ' ' << f.format(r[k]) << '\n';
    std::size_t n = 0;
    try {
        for (const auto &sq : level2_squares_from_thomae(r))
            for (const auto &b : level2_point_from_data(Level2Data{sq, std::nullopt}))
                w.stream() << "# level-2 point " << ++n << '\n' << format_point2(b);
    } catch (const Error &e) {
        if (e.code() != Errc::NoSquareRoots)
            throw;
    }
    w.stream() << "# " << n << " level-2 points\n";
    w.flush();
    return n ? kOk : kNegative;
}

int cmd_down(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    ThetaPoint4 p = parse_point4(read_file(need(o.point, "--point")), f);
    Level2Data d = level4_to_level2(p);
    Output w(o.out, out);
    std::istringstream lines(d.to_text());
    for (std::string line; std::getline(lines, line);)
        w.stream() << "# " << line << '\n';
    for (const auto &b : level2_point_from_data(d))
        w.stream() << format_point2(b);
    w.flush();
    return d.consistent() ? kOk : kNegative;
}

int cmd_up(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    ThetaPoint2 b = parse_point2(read_file(need(o.point, "--point")), f);
    std::vector<ThetaPoint4> lifts;
    try {
        lifts = level2_to_level4(b);
    } catch (const Error &e) {
        if (e.code() != Errc::NoLift)
            throw;
        out << "# " << e.what() << '\n';
        return kNegative;
    }
    Output w(o.out, out);
    for (std::size_t k = 0; k < lifts.size(); ++k)
        w.stream() << "# level-4 point " << k + 1 << '\n' << format_point4(lifts[k].normalized());
    w.stream() << "# " << lifts.size() << " level-4 points\n";
    w.flush();
    return lifts.empty() ? kNegative : kOk;
}

int cmd_rosenhain(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    ThetaPoint2 b = parse_point2(read_file(need(o.point, "--point")), f);
    std::vector<RosenhainCurve> curves;
    try {
        curves = rosenhain_from_level2(b);
    } catch (const Error &e) {
        if (e.code() != Errc::NoSolutionInField)
            throw;
        out << "# " << e.what() << '\n';
        return kNegative;
    }
    Output w(o.out, out);
    for (const auto &c : curves)
        w.stream() << format_curve(c);
    w.flush();
    return curves.empty() ? kNegative : kOk;
}

int cmd_rm_test(const Options &o, std::ostream &out) {
    Field f = load_field(o);
    RosenhainCurve c = parse_curve(read_file(need(o.curve, "--curve")), f);
    SearchConfig cfg{o.max_orderings, o.max_candidates, o.auto_extend};
    RmDecision d = rm_test(c, cfg);
    Output w(o.out, out);
    w.stream() << (d.positive ? "POSITIVE" : "NEGATIVE") << '\n' << "# " << d.summary() << '\n';
    if (d.extended_field)
        w.stream() << "# searched over the extension\n" << "# " << format_field(*d.extended_field);
    if (d.witness)
        w.stream() << format_point4(*d.witness);
    w.flush();
    return d.positive ? kOk : kNegative;
}

} // namespace

std::filesystem::path default_data_dir() { return RMTHETA_DATA_DIR; }

int selftest_example(const std::filesystem::path &data_dir, std::ostream &out, std::ostream &err) {
    auto dir = data_dir / "example";
    std::optional<Field> f8, f2;
    std::optional<ThetaPoint4> point;
    std::optional<RosenhainCurve> curve;
    std::optional<RelationSet> block;
    try {
        f8 = parse_field(read_file(dir / "field_p8.txt"));
        f2 = parse_field(read_file(dir / "field_p2.txt"));
        point = parse_point4(read_file(dir / "point4.txt"), *f8);
        curve = parse_curve(read_file(dir / "curve_p8.txt"), *f8);
        block = parse_relations(read_file(dir / "correspondence.txt"), Provenance::RM);
        // The curve file over F_p^8 must be the F_p^2 curve under y -> x^4.
        RosenhainCurve c2 = parse_curve(read_file(dir / "curve_p2.txt"), *f2);
        Element image = f8->generator().pow(4UL);
        for (std::size_t k = 0; k < 3; ++k)
            if (map_by_generator(c2[k], *f8, image) != (*curve)[k])
                throw Error(Errc::InvalidCurve, "curve_p8.txt is not the image of curve_p2.txt");
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    auto fail = [&](const char *check, const std::string &why) {
        out << check << " FAIL " << why << '\n';
        err << "selftest failed at " << check << ": " << why << '\n';
        return kNegative;
    };

    // A1: the point lies on both systems.
    for (const char *name : {"mumford", "rm"}) {
        VerificationReport r = verify(*point, relation_set_by_name(name));
        if (!r.passed)
            return fail("A1", "relation " + r.first_failure() + " does not vanish");
    }
    out << "A1 PASS example point satisfies the mumford and rm relations\n";

    // A2: the correspondence relations lie in the generated span.
    RelationSet rm = rm_relations();
    for (const auto &r : *block)
        if (!span_contains(r, rm))
            return fail("A2", "relation " + r.id() + " is not in the span of the rm relations");
    out << "A2 PASS correspondence relations lie in the span of the rm relations\n";

    // A3: combinatorial constants.
    if (enumerate_S().size() != 256)
        return fail("A3", "|S| != 256");
    if (equivalent_pairs().size() != 1920)
        return fail("A3", "equivalent pair count != 1920");
    if (rm_bilinear_relations().size() != 24 || rm.size() != 3 || rational_rank(rm) != 3)
        return fail("A3", "relation counts differ from 24 bilinear, 3 rm of rank 3");
    out << "A3 PASS |S| = 256, 1920 equivalent pairs, 24 bilinear and 3 rm relations of rank 3\n";

    // A4: going down and Rosenhain recovery give back the curve.
    try {
        auto b = level2_point_from_data(level4_to_level2(*point));
        bool found = false;
        for (const auto &pt : b)
            for (const auto &c : rosenhain_from_level2(pt))
                found = found || c == *curve;
        if (!found)
            return fail("A4", "the example curve is not among the recovered Rosenhain triples");
    } catch (const Error &e) {
        return fail("A4", e.what());
    }
    out << "A4 PASS Rosenhain recovery contains the example curve\n";
    return kOk;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Theta null points with real multiplication by sqrt(3)", "rmtheta"};
    app.require_subcommand(1);
    Options o;

    auto field_opt = [&](CLI::App *s) {
        s->add_option("--field", o.field, "field file");
        s->add_flag("--check-irreducible", o.check_irreducible, "test the modulus for irreducibility");
    };
    auto out_opt = [&](CLI::App *s) { s->add_option("--out", o.out, "write the result here instead of stdout"); };

    auto *relations = app.add_subcommand("relations", "print a relation set");
    relations->add_option("--set", o.set, "mumford, rm, rm-bilinear, split-product or split-square");
    out_opt(relations);

    auto *verify_cmd = app.add_subcommand("verify", "evaluate a relation set at a level-4 point");
    field_opt(verify_cmd);
    verify_cmd->add_option("--point", o.point, "level-4 point file");
    verify_cmd->add_option("--set", o.set, "relation set");
    out_opt(verify_cmd);

    auto *thomae = app.add_subcommand("thomae", "level-2 points of a curve by the Thomae formulas");
    field_opt(thomae);
    thomae->add_option("--curve", o.curve, "curve file");
    out_opt(thomae);

    auto *down = app.add_subcommand("down", "level-2 data and point of a level-4 point");
    field_opt(down);
    down->add_option("--point", o.point, "level-4 point file");
    out_opt(down);

    auto *up = app.add_subcommand("up", "level-4 lifts of a level-2 point");
    field_opt(up);
    up->add_option("--point", o.point, "level-2 point file");
    out_opt(up);

    auto *rosenhain = app.add_subcommand("rosenhain", "Rosenhain invariants of a level-2 point");
    field_opt(rosenhain);
    rosenhain->add_option("--point", o.point, "level-2 point file");
    out_opt(rosenhain);

    auto *rm = app.add_subcommand("rm-test", "search for a level-4 point with RM by sqrt(3) on a curve");
    field_opt(rm);
    rm->add_option("--curve", o.curve, "curve file");
    rm->add_option("--max-orderings", o.max_orderings, "branch orderings to try")->check(CLI::PositiveNumber);
    rm->add_option("--max-candidates", o.max_candidates, "level-4 candidates to test")->check(CLI::PositiveNumber);
    rm->add_flag("--auto-extend", o.auto_extend, "move to an extension of F_p when roots are missing");
    out_opt(rm);

    auto *selftest = app.add_subcommand("selftest-example", "check the bundled example");
    selftest->add_option("--data", o.data, "data directory")->default_str(default_data_dir().string());

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*relations)
            return cmd_relations(o, out);
        if (*verify_cmd)
            return cmd_verify(o, out);
        if (*thomae)
            return cmd_thomae(o, out);
        if (*down)
            return cmd_down(o, out);
        if (*up)
            return cmd_up(o, out);
        if (*rosenhain)
            return cmd_rosenhain(o, out);
        if (*rm)
            return cmd_rm_test(o, out);
        return selftest_example(o.data.empty() ? default_data_dir() : std::filesystem::path(o.data), out, err);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace rmtheta::cli
