#include "mdepth/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdepth/depth.hpp"
#include "mdepth/duality.hpp"
#include "mdepth/io.hpp"
#include "mdepth/matrix_tree.hpp"
#include "mdepth/search.hpp"

namespace mdepth {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;
constexpr int kGuardRefusal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

int default_workers() {
    const char* s = std::getenv("MDEPTH_WORKERS");
    if (s == nullptr) return 1;
    int w = std::atoi(s);
    return w >= 1 ? w : 1;
}

void add_guard_options(CLI::App* cmd, Guards& g) {
    cmd->add_option("--max-elements", g.max_elements,
                    "Ground-set bound for the depth recursions");
    cmd->add_option("--max-candidates", g.max_candidates,
                    "Bound on candidate vectors per recursion step");
    cmd->add_option("--max-td-vertices", g.max_td_vertices,
                    "Vertex bound for exact tree-depth");
}

void add_format_option(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

RepMatroid load_matroid(const std::string& path) {
    return RepMatroid::from_matrix(parse_matrix_document(read_file(path)));
}

nlohmann::json label_sets_json(const std::vector<LabelSet>& sets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const LabelSet& s : sets) arr.push_back(s);
    return arr;
}

int run_rank(const std::string& path, const std::string& format, std::ostream& out) {
    RepMatroid m = load_matroid(path);
    if (format == "json") {
        nlohmann::json j;
        j["rank"] = m.rank();
        j["elements"] = m.size();
        out << j.dump(2) << "\n";
    } else {
        out << "rank = " << m.rank() << "\n";
    }
    return kOk;
}

int run_circuits(const std::string& path, const std::string& format, const Guards& g,
                 std::ostream& out) {
    RepMatroid m = load_matroid(path);
    std::vector<LabelSet> circuits = m.circuits(g.max_circuit_elements);
    if (format == "json") {
        out << label_sets_json(circuits).dump(2) << "\n";
        return kOk;
    }
    if (circuits.empty()) {
        out << "no circuits\n";
        return kOk;
    }
    for (const LabelSet& c : circuits) out << label_set_name(c) << "\n";
    return kOk;
}

int run_components(const std::string& path, const std::string& format, const Guards& g,
                   std::ostream& out) {
    RepMatroid m = load_matroid(path);
    std::vector<LabelSet> comps = m.components(g.max_circuit_elements);
    if (format == "json") {
        out << label_sets_json(comps).dump(2) << "\n";
        return kOk;
    }
    for (const LabelSet& c : comps) out << label_set_name(c) << "\n";
    return kOk;
}

int run_dual(const std::string& path, std::ostream& out) {
    out << serialize_matrix_document(dual(load_matroid(path)).quotient());
    return kOk;
}

int run_depth(const std::string& path, const std::string& param, bool print_cert,
              const std::string& cert_out, const std::string& format, const Guards& g,
              std::ostream& out) {
    const bool wants_cert = print_cert || !cert_out.empty();
    Matrix a = parse_matrix_document(read_file(path));
    int value = 0;
    std::string cert_text;
    if (param == "tdd") {
        // Presentation-sensitive: measured on the parsed rows, not the
        // normalized quotient.
        value = dual_tree_depth(a, g);
    } else if (param == "cbd" || param == "dbd") {
        SubspaceMatroid w = SubspaceMatroid::from_matroid(RepMatroid::from_matrix(a));
        value = param == "cbd" ? subspace_contraction_depth(w, g)
                               : subspace_deletion_depth(w, g);
    } else {
        DepthParam dp = *depth_param_from_string(param);
        RepMatroid m = RepMatroid::from_matrix(a);
        if (wants_cert) {
            DepthResult r = depth_with_certificate(m, dp, g);
            value = r.value;
            cert_text = certificate_to_json_text(dp, r.certificate);
        } else {
            value = depth_value(m, dp, g);
        }
    }
    if (wants_cert && cert_text.empty()) {
        throw InputError("no certificate form for --param " + param);
    }
    if (!cert_out.empty()) write_file(cert_out, cert_text);
    if (format == "json") {
        nlohmann::json j;
        j["parameter"] = param;
        j["value"] = value;
        if (print_cert) j["certificate"] = nlohmann::json::parse(cert_text);
        out << j.dump(2) << "\n";
    } else {
        out << param << " = " << value << "\n";
        if (print_cert) out << cert_text;
    }
    return kOk;
}

int run_certify(const std::string& matrix_path, const std::string& cert_path, const Guards& g,
                std::ostream& out, std::ostream& err) {
    RepMatroid m = load_matroid(matrix_path);
    ParsedCertificate pc = certificate_from_json_text(read_file(cert_path), m.field());
    VerifyResult vr = verify_certificate(m, pc.param, pc.certificate, g);
    if (vr.ok) {
        out << "certificate ok: " << to_string(pc.param) << " <= "
            << pc.certificate.claimed_value << "\n";
        return kOk;
    }
    err << "certificate rejected: " << vr.reason << "\n";
    return kViolation;
}

int run_encode_tree(const std::string& path, const Guards& g, std::ostream& out) {
    out << serialize_tree_document(encode(parse_matrix_document(read_file(path)), g));
    return kOk;
}

int run_decode_tree(const std::string& path, std::ostream& out) {
    out << serialize_matrix_document(decode(parse_tree_document(read_file(path))));
    return kOk;
}

int run_progressive(const std::string& path, const std::string& format, const Guards& g,
                    std::ostream& out) {
    ProgressiveReport rep = progressive_vectors(load_matroid(path), g);
    if (format == "json") {
        nlohmann::json j;
        j["value"] = rep.value;
        nlohmann::json vecs = nlohmann::json::array();
        for (const Vec& v : rep.vectors) {
            std::vector<int> entries;
            for (int i = 0; i < v.dim(); ++i) entries.push_back(v[i]);
            vecs.push_back(entries);
        }
        j["vectors"] = vecs;
        nlohmann::json rs = nlohmann::json::array();
        for (const ProgressiveReport::Restriction& r : rep.restrictions) {
            nlohmann::json jr;
            jr["elements"] = r.elements;
            jr["spans_all"] = r.spans_all;
            rs.push_back(jr);
        }
        j["restrictions"] = rs;
        out << j.dump(2) << "\n";
    } else {
        out << rep.to_text();
    }
    return kOk;
}

int run_obstructions(const std::string& param, int depth, int field, int max_rows, int max_cols,
                     const Guards& g, std::ostream& out) {
    auto dp = depth_param_from_string(param);
    if (!dp) throw InputError("unknown depth parameter " + param);
    EnumerationSpec spec{Field(field), max_rows, max_cols, true};
    out << find_obstructions(*dp, depth, spec, g).to_text();
    return kOk;
}

int run_check(const std::string& suite, int field, int max_rows, int max_cols, int workers,
              const Guards& g, std::ostream& out) {
    SuiteConfig config{Field(field), max_rows, max_cols, workers, g};
    SuiteReport rep = run_suite(suite, config);
    out << rep.to_text();
    return rep.passed() ? kOk : kViolation;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact depth parameters of matroids represented over prime fields"};
    app.require_subcommand(1);

    Guards guards;
    int exit_code = kOk;

    // rank
    std::string rank_file, rank_format = "text";
    CLI::App* rank = app.add_subcommand("rank", "Rank of the represented matroid");
    rank->add_option("file", rank_file, "Matrix document")->required();
    add_format_option(rank, rank_format);
    rank->callback([&] { exit_code = run_rank(rank_file, rank_format, out); });

    // circuits
    std::string circ_file, circ_format = "text";
    CLI::App* circ = app.add_subcommand("circuits", "Minimal dependent sets");
    circ->add_option("file", circ_file, "Matrix document")->required();
    add_format_option(circ, circ_format);
    circ->callback([&] { exit_code = run_circuits(circ_file, circ_format, guards, out); });

    // components
    std::string comp_file, comp_format = "text";
    CLI::App* comp = app.add_subcommand("components", "Connected components");
    comp->add_option("file", comp_file, "Matrix document")->required();
    add_format_option(comp, comp_format);
    comp->callback([&] { exit_code = run_components(comp_file, comp_format, guards, out); });

    // dual
    std::string dual_file;
    CLI::App* dual_cmd = app.add_subcommand("dual", "Dual matroid as a matrix document");
    dual_cmd->add_option("file", dual_file, "Matrix document")->required();
    dual_cmd->callback([&] { exit_code = run_dual(dual_file, out); });

    // depth
    std::string depth_file, depth_param, depth_cert_out, depth_format = "text";
    bool depth_cert = false;
    CLI::App* depth = app.add_subcommand("depth", "Depth parameter of the represented matroid");
    depth->add_option("file", depth_file, "Matrix document")->required();
    depth->add_option("--param", depth_param, "Parameter to compute")
        ->required()
        ->check(CLI::IsMember({"cd", "dd", "csd", "dsd", "cbd", "dbd", "tdd"}));
    depth->add_flag("--certificate", depth_cert, "Print the witness (cd/dd/csd/dsd only)");
    depth->add_option("--certificate-out", depth_cert_out, "Write the witness to a file");
    add_guard_options(depth, guards);
    add_format_option(depth, depth_format);
    depth->callback([&] {
        exit_code = run_depth(depth_file, depth_param, depth_cert, depth_cert_out, depth_format,
                              guards, out);
    });

    // certify
    std::string certify_matrix, certify_cert;
    CLI::App* certify = app.add_subcommand("certify", "Re-verify a stored depth certificate");
    certify->add_option("matrix", certify_matrix, "Matrix document")->required();
    certify->add_option("certificate", certify_cert, "Certificate file")->required();
    add_guard_options(certify, guards);
    certify->callback([&] { exit_code = run_certify(certify_matrix, certify_cert, guards, out, err); });

    // encode-tree
    std::string enc_file;
    CLI::App* enc = app.add_subcommand("encode-tree", "Matrix-tree encoding of a matrix");
    enc->add_option("file", enc_file, "Matrix document")->required();
    add_guard_options(enc, guards);
    enc->callback([&] { exit_code = run_encode_tree(enc_file, guards, out); });

    // decode-tree
    std::string dec_file;
    CLI::App* dec = app.add_subcommand("decode-tree", "Matrix encoded by a matrix-tree");
    dec->add_option("file", dec_file, "Tree document")->required();
    dec->callback([&] { exit_code = run_decode_tree(dec_file, out); });

    // progressive
    std::string prog_file, prog_format = "text";
    CLI::App* prog = app.add_subcommand("progressive",
                                        "Vectors whose contraction lowers csd, with the "
                                        "minimal csd-preserving restrictions");
    prog->add_option("file", prog_file, "Matrix document")->required();
    add_guard_options(prog, guards);
    add_format_option(prog, prog_format);
    prog->callback([&] { exit_code = run_progressive(prog_file, prog_format, guards, out); });

    // obstructions
    std::string obs_param;
    int obs_depth = 0, obs_field = 2, obs_rows = 2, obs_cols = 4;
    CLI::App* obs = app.add_subcommand("obstructions",
                                       "Minimal matroids of a given depth in a window");
    obs->add_option("--param", obs_param, "Parameter")
        ->required()
        ->check(CLI::IsMember({"cd", "dd", "csd", "dsd"}));
    obs->add_option("--depth", obs_depth, "Target value")->required();
    obs->add_option("--field", obs_field, "Prime modulus")->capture_default_str();
    obs->add_option("--max-rows", obs_rows, "Row bound of the window")->capture_default_str();
    obs->add_option("--max-cols", obs_cols, "Column bound of the window")->capture_default_str();
    add_guard_options(obs, guards);
    obs->callback([&] {
        exit_code = run_obstructions(obs_param, obs_depth, obs_field, obs_rows, obs_cols,
                                     guards, out);
    });

    // check
    std::string check_suite;
    int check_field = 2, check_rows = 3, check_cols = 4, check_workers = default_workers();
    CLI::App* check = app.add_subcommand("check", "Run an exhaustive property suite");
    check->add_option("--suite", check_suite, "Suite name")->required();
    check->add_option("--field", check_field, "Prime modulus")->capture_default_str();
    check->add_option("--max-rows", check_rows, "Row bound of the window")->capture_default_str();
    check->add_option("--max-cols", check_cols, "Column bound of the window")
        ->capture_default_str();
    check->add_option("--workers", check_workers, "Parallel workers (default MDEPTH_WORKERS)");
    add_guard_options(check, guards);
    check->callback([&] {
        exit_code = run_check(check_suite, check_field, check_rows, check_cols, check_workers,
                              guards, out);
    });

    std::vector<const char*> argv;
    argv.push_back("mdepth");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream hold;
        int rc = app.exit(e, out, hold);
        if (!hold.str().empty()) err << hold.str();
        return rc == 0 ? kOk : kInputError;
    } catch (const GuardError& e) {
        err << "guard refused: " << e.what() << "\n";
        return kGuardRefusal;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return exit_code;
}

} // namespace mdepth
