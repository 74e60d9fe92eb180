#include "mdepth/io.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace mdepth {

using nlohmann::json;

const char* to_string(ParseCode c) {
    switch (c) {
        case ParseCode::MalformedHeader: return "malformed-header";
        case ParseCode::NonPrimeModulus: return "non-prime-modulus";
        case ParseCode::EntryOutOfRange: return "entry-out-of-range";
        case ParseCode::MalformedRow: return "malformed-row";
        case ParseCode::WrongRowCount: return "wrong-row-count";
        case ParseCode::MalformedTree: return "malformed-tree";
    }
    return "?";
}

ParseError::ParseError(ParseCode code, int line, const std::string& message)
    : InputError("line " + std::to_string(line) + ": " + message + " [" +
                 std::string(to_string(code)) + "]"),
      code_(code), line_(line) {}

namespace {

struct Line {
    int number; // 1-based
    std::string text;
};

/// Content lines: comments (leading '#') and blank lines removed.
std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        out.push_back({number, line});
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_int(const std::string& tok, long& value) {
    if (tok.empty()) return false;
    size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    try {
        value = std::stol(tok);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

Field parse_field_token(const std::string& tok, int line, ParseCode malformed) {
    long p = 0;
    if (!parse_int(tok, p)) {
        throw ParseError(malformed, line, "field modulus is not an integer");
    }
    if (p < 2 || p > kMaxModulus || !is_prime(static_cast<int>(p))) {
        throw ParseError(ParseCode::NonPrimeModulus, line,
                         std::to_string(p) + " is not a supported prime modulus");
    }
    return Field(static_cast<int>(p));
}

} // namespace

Matrix parse_matrix_document(const std::string& text) {
    std::vector<Line> lines = content_lines(text);
    if (lines.empty()) {
        throw ParseError(ParseCode::MalformedHeader, 1, "missing header line \"p h n\"");
    }
    std::vector<std::string> header = tokens_of(lines[0].text);
    if (header.size() != 3) {
        throw ParseError(ParseCode::MalformedHeader, lines[0].number,
                         "header must be \"p h n\"");
    }
    Field f = parse_field_token(header[0], lines[0].number, ParseCode::MalformedHeader);
    long h = 0, n = 0;
    if (!parse_int(header[1], h) || !parse_int(header[2], n) || h < 0 || n < 0) {
        throw ParseError(ParseCode::MalformedHeader, lines[0].number,
                         "row and column counts must be nonnegative integers");
    }
    const long expected_rows = n == 0 ? 0 : h;
    if (static_cast<long>(lines.size()) - 1 != expected_rows) {
        throw ParseError(ParseCode::WrongRowCount,
                         lines.size() > 1 ? lines.back().number : lines[0].number,
                         "expected " + std::to_string(expected_rows) + " data lines, found " +
                             std::to_string(lines.size() - 1));
    }
    Matrix a(f, static_cast<int>(h), static_cast<int>(n));
    for (long r = 0; r < expected_rows; ++r) {
        const Line& line = lines[static_cast<size_t>(r + 1)];
        std::vector<std::string> toks = tokens_of(line.text);
        if (static_cast<long>(toks.size()) != n) {
            throw ParseError(ParseCode::MalformedRow, line.number,
                             "expected " + std::to_string(n) + " entries, found " +
                                 std::to_string(toks.size()));
        }
        for (long c = 0; c < n; ++c) {
            long v = 0;
            if (!parse_int(toks[static_cast<size_t>(c)], v)) {
                throw ParseError(ParseCode::MalformedRow, line.number,
                                 "entry is not an integer");
            }
            if (v < 0 || v >= f.modulus()) {
                throw ParseError(ParseCode::EntryOutOfRange, line.number,
                                 "entry " + std::to_string(v) + " is outside GF(" +
                                     std::to_string(f.modulus()) + ")");
            }
            a.at(static_cast<int>(r), static_cast<int>(c)) = static_cast<Scalar>(v);
        }
    }
    return a;
}

std::string serialize_matrix_document(const Matrix& a) {
    std::string out = std::to_string(a.field().modulus()) + " " + std::to_string(a.rows()) +
                      " " + std::to_string(a.cols()) + "\n";
    if (a.cols() == 0) return out;
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            if (c > 0) out += " ";
            out += std::to_string(int(a.at(r, c)));
        }
        out += "\n";
    }
    return out;
}

MatrixTree parse_tree_document(const std::string& text) {
    std::vector<Line> lines = content_lines(text);
    if (lines.empty()) {
        throw ParseError(ParseCode::MalformedHeader, 1, "missing field header line \"p\"");
    }
    std::vector<std::string> header = tokens_of(lines[0].text);
    if (header.size() != 1) {
        throw ParseError(ParseCode::MalformedHeader, lines[0].number,
                         "tree header must be the field modulus alone");
    }
    Field f = parse_field_token(header[0], lines[0].number, ParseCode::MalformedHeader);
    std::vector<TreeNode> nodes;
    for (size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        std::vector<std::string> toks = tokens_of(line.text);
        if (toks.size() != 2 && toks.size() != 3) {
            throw ParseError(ParseCode::MalformedTree, line.number,
                             "node line must be \"id parent [labels]\"");
        }
        TreeNode node;
        long id = 0;
        if (!parse_int(toks[0], id)) {
            throw ParseError(ParseCode::MalformedTree, line.number, "node id is not an integer");
        }
        node.id = static_cast<int>(id);
        if (toks[1] == "-") {
            node.parent = -1;
        } else {
            long parent = 0;
            if (!parse_int(toks[1], parent)) {
                throw ParseError(ParseCode::MalformedTree, line.number,
                                 "parent must be an id or \"-\"");
            }
            node.parent = static_cast<int>(parent);
        }
        if (toks.size() == 2) {
            if (node.parent != -1) {
                throw ParseError(ParseCode::MalformedTree, line.number,
                                 "only the root line may omit labels");
            }
            node.kind = TreeNode::Kind::Root;
        } else {
            if (node.parent == -1) {
                throw ParseError(ParseCode::MalformedTree, line.number,
                                 "the root line must omit labels");
            }
            // Split the label token on commas.
            std::vector<std::string> labels;
            std::string cur;
            for (char ch : toks[2]) {
                if (ch == ',') {
                    labels.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            labels.push_back(cur);
            if (labels[0] == "R") {
                if (labels.size() != 1) {
                    throw ParseError(ParseCode::MalformedTree, line.number,
                                     "a row node carries the single label R");
                }
                node.kind = TreeNode::Kind::Row;
            } else if (labels[0] == "C") {
                node.kind = TreeNode::Kind::Column;
                for (size_t i = 1; i < labels.size(); ++i) {
                    size_t colon = labels[i].find(':');
                    if (colon == std::string::npos) {
                        throw ParseError(ParseCode::MalformedTree, line.number,
                                         "entry labels have the form i:alpha");
                    }
                    long depth = 0, alpha = 0;
                    if (!parse_int(labels[i].substr(0, colon), depth) ||
                        !parse_int(labels[i].substr(colon + 1), alpha) || depth < 0) {
                        throw ParseError(ParseCode::MalformedTree, line.number,
                                         "entry labels have the form i:alpha");
                    }
                    if (alpha < 0 || alpha >= f.modulus()) {
                        throw ParseError(ParseCode::EntryOutOfRange, line.number,
                                         "label value " + std::to_string(alpha) +
                                             " is outside GF(" + std::to_string(f.modulus()) + ")");
                    }
                    node.entry_labels.push_back({static_cast<int>(depth),
                                                 static_cast<Scalar>(alpha)});
                }
                std::sort(node.entry_labels.begin(), node.entry_labels.end());
            } else {
                throw ParseError(ParseCode::MalformedTree, line.number,
                                 "labels must start with R or C");
            }
        }
        nodes.push_back(std::move(node));
    }
    MatrixTree t(f, std::move(nodes));
    t.validate();
    return t;
}

std::string serialize_tree_document(const MatrixTree& t) {
    std::string out = std::to_string(t.field().modulus()) + "\n";
    for (const TreeNode& n : t.nodes()) {
        out += std::to_string(n.id);
        out += " ";
        out += n.parent == -1 ? std::string("-") : std::to_string(n.parent);
        switch (n.kind) {
            case TreeNode::Kind::Root:
                break;
            case TreeNode::Kind::Row:
                out += " R";
                break;
            case TreeNode::Kind::Column:
                out += " C";
                for (const auto& [i, alpha] : n.entry_labels) {
                    out += "," + std::to_string(i) + ":" + std::to_string(int(alpha));
                }
                break;
        }
        out += "\n";
    }
    return out;
}

namespace {

json certificate_node_to_json(const Certificate& c) {
    json j;
    j["value"] = c.claimed_value;
    switch (c.kind) {
        case Certificate::Kind::Base: {
            j["kind"] = "base";
            switch (c.base_kind) {
                case Certificate::BaseKind::RankZero: j["base"] = "rank-zero"; break;
                case Certificate::BaseKind::SingleElement: j["base"] = "single-element"; break;
                case Certificate::BaseKind::FullyIndependent: j["base"] = "fully-independent"; break;
            }
            break;
        }
        case Certificate::Kind::Split: {
            j["kind"] = "split";
            json parts = json::array();
            for (size_t i = 0; i < c.parts.size(); ++i) {
                json part;
                part["elements"] = c.parts[i];
                part["child"] = certificate_node_to_json(c.children[i]);
                parts.push_back(std::move(part));
            }
            j["parts"] = std::move(parts);
            break;
        }
        case Certificate::Kind::Step: {
            j["kind"] = "step";
            switch (c.action) {
                case Certificate::Action::ContractElement:
                    j["action"] = "contract-element";
                    j["element"] = c.element;
                    break;
                case Certificate::Action::DeleteElement:
                    j["action"] = "delete-element";
                    j["element"] = c.element;
                    break;
                case Certificate::Action::ContractVector: {
                    j["action"] = "contract-vector";
                    std::vector<int> entries;
                    for (int i = 0; i < c.vec->dim(); ++i) entries.push_back((*c.vec)[i]);
                    j["vector"] = entries;
                    break;
                }
                case Certificate::Action::AddRow: {
                    j["action"] = "add-row";
                    std::vector<int> entries;
                    for (int i = 0; i < c.vec->dim(); ++i) entries.push_back((*c.vec)[i]);
                    j["vector"] = entries;
                    break;
                }
            }
            j["child"] = certificate_node_to_json(c.children.front());
            break;
        }
    }
    return j;
}

Certificate certificate_node_from_json(const json& j, const Field& f) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("value")) {
        throw InputError("certificate node needs \"kind\" and \"value\"");
    }
    std::string kind = j.at("kind").get<std::string>();
    int value = j.at("value").get<int>();
    if (kind == "base") {
        std::string base = j.at("base").get<std::string>();
        Certificate::BaseKind bk;
        if (base == "rank-zero") bk = Certificate::BaseKind::RankZero;
        else if (base == "single-element") bk = Certificate::BaseKind::SingleElement;
        else if (base == "fully-independent") bk = Certificate::BaseKind::FullyIndependent;
        else throw InputError("unknown certificate base kind " + base);
        return Certificate::base(bk, value);
    }
    if (kind == "split") {
        std::vector<LabelSet> parts;
        std::vector<Certificate> children;
        for (const json& part : j.at("parts")) {
            parts.push_back(part.at("elements").get<LabelSet>());
            children.push_back(certificate_node_from_json(part.at("child"), f));
        }
        Certificate c = Certificate::split(std::move(parts), std::move(children));
        if (c.claimed_value != value) {
            throw InputError("certificate split node claims an inconsistent value");
        }
        return c;
    }
    if (kind == "step") {
        std::string action = j.at("action").get<std::string>();
        Certificate child = certificate_node_from_json(j.at("child"), f);
        Certificate c = Certificate::base(Certificate::BaseKind::RankZero, 0);
        if (action == "contract-element" || action == "delete-element") {
            Label e = j.at("element").get<Label>();
            c = Certificate::step_element(action == "contract-element"
                                              ? Certificate::Action::ContractElement
                                              : Certificate::Action::DeleteElement,
                                          e, std::move(child));
        } else if (action == "contract-vector" || action == "add-row") {
            std::vector<int> raw = j.at("vector").get<std::vector<int>>();
            std::vector<Scalar> entries;
            for (int x : raw) {
                if (x < 0 || x >= f.modulus()) {
                    throw InputError("certificate vector entry outside the field");
                }
                entries.push_back(static_cast<Scalar>(x));
            }
            c = Certificate::step_vector(action == "contract-vector"
                                             ? Certificate::Action::ContractVector
                                             : Certificate::Action::AddRow,
                                         Vec(f, std::move(entries)), std::move(child));
        } else {
            throw InputError("unknown certificate action " + action);
        }
        if (c.claimed_value != value) {
            throw InputError("certificate step node claims an inconsistent value");
        }
        return c;
    }
    throw InputError("unknown certificate node kind " + kind);
}

} // namespace

std::string certificate_to_json_text(DepthParam p, const Certificate& c) {
    json j;
    j["parameter"] = to_string(p);
    j["value"] = c.claimed_value;
    j["root"] = certificate_node_to_json(c);
    return j.dump(2) + "\n";
}

ParsedCertificate certificate_from_json_text(const std::string& text, const Field& f) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        std::string param_name = j.at("parameter").get<std::string>();
        auto param = depth_param_from_string(param_name);
        if (!param) throw InputError("unknown depth parameter " + param_name);
        Certificate root = certificate_node_from_json(j.at("root"), f);
        if (j.contains("value") && j.at("value").get<int>() != root.claimed_value) {
            throw InputError("certificate document value disagrees with its root node");
        }
        return ParsedCertificate{*param, std::move(root)};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed certificate document: ") + e.what());
    }
}

} // namespace mdepth
