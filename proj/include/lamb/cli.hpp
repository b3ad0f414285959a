#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lamb {

const char* version();

int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamb
