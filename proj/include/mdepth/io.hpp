#pragma once

#include <string>

#include "mdepth/depth.hpp"
#include "mdepth/matrix_tree.hpp"

namespace mdepth {

enum class ParseCode {
    MalformedHeader,
    NonPrimeModulus,
    EntryOutOfRange,
    MalformedRow,
    WrongRowCount,
    MalformedTree,
};

const char* to_string(ParseCode c);

/// Input error with a machine-readable code and the 1-based line it points at.
class ParseError : public InputError {
public:
    ParseError(ParseCode code, int line, const std::string& message);
    ParseCode code() const { return code_; }
    int line() const { return line_; }

private:
    ParseCode code_;
    int line_;
};

/// Matrix document:
///   - lines starting with '#' and blank lines are ignored
///   - header line "p h n" (base-10)
///   - h data lines with n entries each (none when n = 0)
Matrix parse_matrix_document(const std::string& text);
std::string serialize_matrix_document(const Matrix& a);

/// Tree document:
///   - lines starting with '#' and blank lines are ignored
///   - header line "p"
///   - one node per line: "id parent labels" where parent is an id or "-" for
///     the root, and labels is "R" for a row node or "C,i:alpha,..." for a
///     column node; the root line carries no label token
MatrixTree parse_tree_document(const std::string& text);
std::string serialize_tree_document(const MatrixTree& t);

/// Certificates travel as JSON documents carrying the parameter tag, the
/// claimed value, and the recursive witness.
std::string certificate_to_json_text(DepthParam p, const Certificate& c);

struct ParsedCertificate {
    DepthParam param;
    Certificate certificate;
};

/// Inverse of certificate_to_json_text; the field is needed to rebuild step
/// vectors.  Throws InputError on malformed documents.
ParsedCertificate certificate_from_json_text(const std::string& text, const Field& f);

} // namespace mdepth
