#pragma once

#include <ostream>

namespace qcorr::app {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kNumericFailure = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr::app
