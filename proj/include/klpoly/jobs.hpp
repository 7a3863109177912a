#ifndef KLPOLY_JOBS_HPP
#define KLPOLY_JOBS_HPP

#include <map>
#include <string>

namespace klpoly {

// One engine invocation: a command plus its flag map (string-typed; the
// runner parses and validates).  Exit-code contract: 0 success, 1 numeric
// failure, 2 input error.
struct JobSpec {
    std::string command;
    std::map<std::string, std::string> params;
};

int run_job(const JobSpec& job);

// Single job object or {"jobs": [...]} batch; batches fan out across up to
// KLPOLY_THREADS workers with deterministic per-file outputs.
int run_job_file(const std::string& path);

} // namespace klpoly

#endif
