#ifndef PROJFORCE_IO_HPP
#define PROJFORCE_IO_HPP

#include <iosfwd>
#include <string>

#include "projforce/enumerate.hpp"

namespace projforce {

/// Matrix text format: first line `q k n`, then k lines of n
/// integer-encoded field elements. `#` starts a comment anywhere.

FqMatrix read_matrix(std::istream& is);
FqMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& os, const FqMatrix& m);

/// Canonical JSON: keys in byte order, two-space indent, integers only,
/// no trailing newline. Re-serializing a parse of any to_json output
/// reproduces it byte for byte.
std::string to_json(const FqMatrix& m);
std::string to_json(const LinearMap& m);
std::string to_json(const Witness& w);
std::string to_json(const ForcingVerdict& v);
std::string to_json(const RealizableResult& r);
std::string to_json(const SurveyReport& r);
std::string canonical_json(const std::string& text);

} // namespace projforce

#endif
