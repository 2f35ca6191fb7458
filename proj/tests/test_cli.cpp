#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/helicity_cli_out.txt";
    const std::string err_path = "/tmp/helicity_cli_err.txt";
    const std::string command =
        std::string(HELICITY_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(command.c_str());
    return RunResult{WEXITSTATUS(status), slurp(out_path), slurp(err_path)};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

double extract_number(const std::string& json, const std::string& key) {
    const auto pos = json.find('"' + key + "\":");
    REQUIRE(pos != std::string::npos);
    return std::strtod(json.c_str() + pos + key.size() + 3, nullptr);
}

} // namespace

TEST_CASE("contact subcommand prints the closed-form value") {
    const auto run = run_cli("contact --manifold s3 --h \"cos(2*eta)\" --grid 32");
    CHECK(run.exit_code == 0);
    CHECK(std::abs(extract_number(run.out, "value") + 1.0) < 1e-9);
    CHECK(contains(run.out, "\"method\":\"ContactFormula\""));
    CHECK(contains(run.out, "\"bounds\""));
    CHECK(contains(run.out, "\"resolution\":[32,32,32]"));
}

TEST_CASE("identical configurations produce byte-identical reports") {
    const auto first = run_cli("contact --h \"cos(2*eta)^2-0.25\" --grid 16");
    const auto second = run_cli("contact --h \"cos(2*eta)^2-0.25\" --grid 16");
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
}

TEST_CASE("domain errors exit with code 1 and the error name") {
    write_file("/tmp/helicity_has_c1.json",
               R"({"N": 1, "coeffs": [[0.15, 0.0], [0.0, 0.0], [0.15, 0.0]]})");
    const auto run = run_cli("torus --coeffs /tmp/helicity_has_c1.json");
    CHECK(run.exit_code == 1);
    CHECK(contains(run.err, "NotExact"));

    const auto not_basic = run_cli("contact --h \"cos(xi1)\" --grid 8");
    CHECK(not_basic.exit_code == 1);
    CHECK(contains(not_basic.err, "NotBasic"));
}

TEST_CASE("usage errors exit with code 2 and usage text") {
    const auto bogus = run_cli("bogus");
    CHECK(bogus.exit_code == 2);
    CHECK(contains(bogus.err, "Usage"));

    const auto missing = run_cli("contact");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("torus subcommand reports flux, kappa, and both values") {
    write_file("/tmp/helicity_cos2z.json",
               R"({"N": 2, "coeffs": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]})");
    const auto run = run_cli("torus --coeffs /tmp/helicity_cos2z.json --direct --grid 16");
    CHECK(run.exit_code == 0);
    CHECK(contains(run.out, "\"exact\":true"));
    const double kappa = extract_number(run.out, "kappa");
    CHECK(std::abs(kappa - 248.05021344239853) < 1e-6);
    const double formula = extract_number(run.out, "formula_value");
    const double direct = extract_number(run.out, "direct_value");
    CHECK(std::abs(formula - direct) < 1e-6 * (1.0 + std::abs(formula)));
}

TEST_CASE("suspension subcommand ties helicity to the Calabi invariant") {
    const auto run = run_cli(
        "suspension --f \"bump(r/0.8)*(1+0.3*r*cos(theta))*(1+0.5*sin(2*pi*t))\" --support 0.8");
    CHECK(run.exit_code == 0);
    const double cal = extract_number(run.out, "calabi");
    const double value = extract_number(run.out, "helicity");
    CHECK(std::abs(value - 2.0 * cal) <= 1e-6 * (1.0 + std::abs(cal)));
}

TEST_CASE("double suspension emits formula and termwise values") {
    const auto run = run_cli("double-suspension --f1 \"0\" --f2 \"0\" --grid 16,8,8");
    CHECK(run.exit_code == 0);
    const double formula = extract_number(run.out, "formula_value");
    CHECK(std::abs(formula - 4.0 * std::pow(3.14159265358979323846, 4)) < 1e-6);
    CHECK(contains(run.out, "\"termwise\""));
    CHECK(contains(run.out, "\"h_reeb\""));
}

TEST_CASE("lipschitz subcommand emits the certificate table") {
    const auto run = run_cli("lipschitz --rho \"r^-2\" --nmax 5");
    CHECK(run.exit_code == 0);
    CHECK(contains(run.out, "n,r_n,L_n"));
    std::istringstream lines(run.out);
    std::string line;
    std::getline(lines, line); // header
    int rows = 0;
    double previous = 0.0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        const auto last_comma = line.rfind(',');
        const double bound = std::strtod(line.c_str() + last_comma + 1, nullptr);
        CHECK(bound > previous);
        previous = bound;
    }
    CHECK(rows == 5);
}

TEST_CASE("limit subcommand writes the sequence as CSV") {
    write_file("/tmp/helicity_seq.json",
               R"(["cos(2*eta)+1", "cos(2*eta)+0.5", "cos(2*eta)+0.25"])");
    const auto run = run_cli("limit --exprs /tmp/helicity_seq.json --grid 16");
    CHECK(run.exit_code == 0);
    CHECK(contains(run.out, "i,value,sup_gap"));
    CHECK(contains(run.out, "0,"));
    CHECK(contains(run.out, "2,"));
}

TEST_CASE("split subcommand reports the transfer function diagnostics") {
    write_file("/tmp/helicity_split_f.json",
               R"({"N": 1, "coeffs": [[0.5, 0.0], [0.0, 0.0], [0.5, 0.0]]})");
    const auto run = run_cli(
        "split --f /tmp/helicity_split_f.json --theta golden --format json");
    CHECK(run.exit_code == 0);
    CHECK(extract_number(run.out, "residual_sup") < 1e-10);
    CHECK(contains(run.out, "small_divisor_min"));
}

TEST_CASE("furstenberg subcommand runs orbits and splits") {
    const auto run = run_cli("furstenberg --theta golden --d 1 --orbit 20000 --cells 4");
    CHECK(run.exit_code == 0);
    CHECK(extract_number(run.out, "discrepancy") < 0.05);

    const auto example = run_cli("furstenberg --example 8 --relaxed");
    CHECK(example.exit_code == 0);
    CHECK(contains(example.out, "\"relaxed\":true"));
    CHECK(contains(example.out, "c1_partial_sums"));
}

TEST_CASE("fiber-linking subcommand evaluates signed point sets") {
    write_file("/tmp/helicity_points.json", R"([[0.0, 0.0, 1], [3.14159265358979, 0.0, -1]])");
    const auto run = run_cli("fiber-linking --f \"cos(phi)\" --points /tmp/helicity_points.json");
    CHECK(run.exit_code == 0);
    CHECK(std::abs(extract_number(run.out, "value") + 2.0) < 1e-9);
}

TEST_CASE("environment variable overrides the default grid") {
    const std::string out_path = "/tmp/helicity_cli_out.txt";
    const std::string command = std::string("HELICITY_GRID=16 ") + HELICITY_CLI_PATH +
                                " contact --h \"1\" >" + out_path + " 2>/dev/null";
    REQUIRE(std::system(command.c_str()) == 0);
    CHECK(contains(slurp(out_path), "\"resolution\":[16,16,16]"));
}

TEST_CASE("config files supply defaults but flags win") {
    write_file("/tmp/helicity_config.ini", "grid=8\n");
    const auto defaulted =
        run_cli("contact --h \"1\" --config /tmp/helicity_config.ini");
    CHECK(defaulted.exit_code == 0);
    CHECK(contains(defaulted.out, "\"resolution\":[8,8,8]"));

    const auto overridden =
        run_cli("contact --h \"1\" --config /tmp/helicity_config.ini --grid 12");
    CHECK(overridden.exit_code == 0);
    CHECK(contains(overridden.out, "\"resolution\":[12,12,12]"));
}

TEST_CASE("reports can be written to a file") {
    const std::string report_path = "/tmp/helicity_report.json";
    std::remove(report_path.c_str());
    const auto run = run_cli("bounds --h \"cos(2*eta)\" --grid 16 -o " + report_path);
    CHECK(run.exit_code == 0);
    CHECK(run.out.empty());
    const std::string report = slurp(report_path);
    CHECK(contains(report, "tight_lower"));
}
