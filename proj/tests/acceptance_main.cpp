#include <iostream>
#include <string>

#include "ppgate/validate.hpp"

int main(int argc, char** argv) {
    std::string data_dir = argc > 1 ? argv[1] : ppgate::default_data_dir();
    auto results = ppgate::run_acceptance(data_dir, std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return ppgate::all_passed(results) ? 0 : 1;
}
