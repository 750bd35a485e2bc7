#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsham/pipeline.hpp"

namespace rsham::cli {

enum ExitCode : int { ok = 0, fail = 1, budget = 2, usage = 64 };

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies a JSON object of pipeline settings on top of `base`. Unknown
/// keys and wrong types raise InvalidInput.
PipelineConfig pipeline_config_from_json(const std::string& text, PipelineConfig base = {});

}  // namespace rsham::cli
