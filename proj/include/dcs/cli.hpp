#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcs {

/// Batch front end. Commands: check, realize, classify, normalize-alpha,
/// fix-gauge, convert, reduce, curvature, solve. Each reads mesh and
/// structure JSON files, runs the corresponding library operation and
/// prints a JSON report (also written to --report when given). Exit code 0
/// on success, 1 on validation failure, 2 on IO/schema/usage errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcs
