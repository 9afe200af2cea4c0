#include "xtalk/errors.h"

namespace xtalk {

namespace {

std::string join_nodes(const std::vector<std::string> &nodes) {
    std::string out;
    for (const auto &n : nodes) {
        if (!out.empty()) {
            out += ", ";
        }
        out += n;
    }
    return out;
}

}  // namespace

FloatingSubcircuitError::FloatingSubcircuitError(std::vector<std::string> nodes)
    : SingularMatrixError("floating subcircuit: " + join_nodes(nodes)), nodes(std::move(nodes)) {
}

ParseError::ParseError(const std::string &message, size_t line, size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message(message),
      line(line),
      column(column) {
}

}  // namespace xtalk
