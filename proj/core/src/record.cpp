#include "bb/record.hpp"

namespace bb {

const char* status_name(Status s) {
  switch (s) {
    case Status::Halt:
      return "halt";
    case Status::Nonhalt:
      return "nonhalt";
    case Status::Unknown:
      return "unknown";
    case Status::AssumedNonhalt:
      return "assumed-nonhalt";
  }
  return "unknown";
}

std::string MachineRecord::to_line() const {
  std::string line = machine;
  line += ',';
  line += status_name(status);
  line += ',';
  line += decider_id;
  if (halt) {
    line += ',';
    line += std::to_string(halt->steps);
    line += ',';
    line += std::to_string(halt->sigma);
    line += ',';
    line += std::to_string(halt->space);
  }
  return line;
}

}  // namespace bb
