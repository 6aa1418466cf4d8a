#pragma once

namespace tcpkit {

// Full command-line entry point (classify / solve / probe / gen / suite).
// Exit codes: 0 completed (including Fails verdicts and failing suites'
// per-record output written), 1 usage error, 2 internal or budget failure
// (and suites that did not pass).
int run_cli(int argc, const char* const* argv);

} // namespace tcpkit
