#ifndef NEUMANN_IO_HPP
#define NEUMANN_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "neumann/certifier.hpp"
#include "neumann/constructions.hpp"
#include "neumann/ode.hpp"
#include "neumann/potential.hpp"

namespace neumann {

using json = nlohmann::json;

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const Potential& a);
Potential potential_from_json(const json& j);
Potential load_potential(const std::filesystem::path& path);

/// Accepts a bare array of points or {"points": [...]}.
Partition partition_from_json(const json& j);

json to_json(const Certificate& c);
json to_json(const Trajectory& t);
json to_json(const ClosedFormSolution& s);
json to_json(const ZeroDistributionReport& r);

json read_json(const std::filesystem::path& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace neumann

#endif  // NEUMANN_IO_HPP
