#pragma once
// Command-line front end.  Arguments after the subcommand are key=value
// pairs; --format json|csv, --out FILE and --timings may appear anywhere.

#include "pretsums/periodic.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace pretsums {

// exit code 0 on success, 1 on domain errors, 2 on parse errors
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// expmod:poly=c0,c1,c2  kloosterman:a,b  charshift:INDEX,SHIFT  table:FILE  one, and '*'-products
PeriodicFunction parse_periodic(const std::string& spec, std::uint64_t q);

// "a/q" or a decimal
double parse_alpha(const std::string& s);

}  // namespace pretsums
