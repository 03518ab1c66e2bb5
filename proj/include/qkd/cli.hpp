#pragma once

namespace qkd {

/// Entry point of the qkdlink tool. Returns the process exit code:
/// 0 success, 1 usage or configuration error, 2 numerical error
/// (e.g. undefined QBER: no sifted key).
int cli_main(int argc, const char* const* argv);

} // namespace qkd
