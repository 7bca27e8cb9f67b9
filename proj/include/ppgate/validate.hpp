#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppgate {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

// runs the full acceptance suite, printing one PASS/FAIL line per criterion;
// data_dir holds the frozen regression CSVs
std::vector<CriterionResult> run_acceptance(const std::string& data_dir, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

std::string default_data_dir();

}  // namespace ppgate
