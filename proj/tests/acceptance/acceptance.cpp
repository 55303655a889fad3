// Acceptance run: one line per criterion, AC1-AC12. AC12 runs the suite a
// second time and compares the written report files byte for byte.
#include "bifractal_cli/json_out.hpp"
#include "bifractal_cli/suite.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

int main()
{
    using namespace bifractal::cli;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bifractal_acceptance";
    fs::create_directories(dir);

    SuiteReport first = run_suite();
    const fs::path a = dir / "report_a.json";
    const fs::path b = dir / "report_b.json";
    write_json_file(a.string(), first.to_json());
    // wall-clock limits live here, outside the deterministic report
    const double limits[] = {60.0, 0, 0, 0, 0, 300.0, 0, 0, 0, 0, 0};
    bool all = true;
    for (CriterionResult& c : first.criteria) {
        const double limit = limits[c.id - 1];
        std::ostringstream extra;
        extra.precision(3);
        extra << std::fixed << " [" << c.seconds << " s";
        if (limit > 0.0) {
            extra << ", limit " << limit << " s";
            c.pass = c.pass && c.seconds <= limit;
        }
        extra << "]";
        all = all && c.pass;
        std::cout << format_line(c) << extra.str() << std::endl;
        if (!c.pass && c.details.contains("failures")) {
            std::cout << "    failures: " << dump_json(c.details["failures"], -1) << std::endl;
        }
    }

    write_json_file(b.string(), run_suite().to_json());
    const std::string ba = slurp(a);
    const std::string bb = slurp(b);
    const bool same = !ba.empty() && ba == bb;
    all = all && same;
    std::cout << (same ? "PASS" : "FAIL") << " AC12 determinism: two suite runs wrote " << ba.size() << " and "
              << bb.size() << " bytes, " << (same ? "identical" : "different") << std::endl;
    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
    return all ? 0 : 1;
}
