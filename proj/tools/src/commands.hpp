#pragma once

namespace msrank::cli {

int run_cli(int argc, char** argv);

}  // namespace msrank::cli
