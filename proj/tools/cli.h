#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "eventcrawl/crawler.h"

namespace eventcrawl::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kPartialFailure = 3,
};

struct Hooks {
  /// Replaces the crawl of individual strategies in `eval`.
  std::function<CrawlResult(const CrawlStrategy&)> crawl_runner;
};

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const Hooks& hooks = {});

}  // namespace eventcrawl::cli
