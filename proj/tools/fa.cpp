// fa: command-line front end for the automaton workbench.
//
//   fa accept <file> <word> [--trace]
//   fa nature <file> --kind=productive|accessible|useful
//   fa export <file> --dot [--color-word=<w>]
//   fa examples [--write <dir>]
//   fa serve [--port N]
//
// Exit codes: 0 accepted / success, 1 rejected, 2 error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oflat/automaton.hpp"
#include "oflat/document.hpp"
#include "oflat/error.hpp"
#include "oflat/service.hpp"
#include "oflat/simulation.hpp"

namespace {

constexpr int kExitRejected = 1;
constexpr int kExitError = 2;

oflat::Server* g_server = nullptr;

std::string braced(const std::set<oflat::StateId>& states) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : states) {
        if (!first) out += ",";
        out += s;
        first = false;
    }
    return out + "}";
}

int run_accept(const std::string& file, const std::string& word_text, bool show_trace) {
    const auto a = oflat::read_automaton_file(file);
    const auto word = oflat::make_word(word_text);
    const auto tr = oflat::trace(a, word);
    if (show_trace) {
        for (std::size_t i = 0; i < tr.configs.size(); ++i) {
            const auto& c = tr.configs[i];
            std::cout << "pos=" << i << " active=" << braced(c.active)
                      << " remaining=" << word.size() - c.consumed << "\n";
        }
    }
    std::cout << oflat::to_string(tr.verdict) << "\n";
    return tr.verdict == oflat::Verdict::Accepted ? 0 : kExitRejected;
}

int run_nature(const std::string& file, const std::string& kind_text) {
    const auto kind = oflat::parse_nature_kind(kind_text);
    const auto a = oflat::read_automaton_file(file);
    for (const auto& s : oflat::states_of_nature(a, kind)) std::cout << s << "\n";
    return 0;
}

int run_export(const std::string& file, const std::optional<std::string>& color_word) {
    const auto a = oflat::read_automaton_file(file);
    oflat::StateColoring coloring;
    if (color_word) coloring = oflat::final_coloring(a, oflat::make_word(*color_word));
    const auto stem = std::filesystem::path(file).filename().string();
    std::cout << oflat::export_dot(a, coloring, stem.substr(0, stem.find('.')));
    return 0;
}

int run_examples(const std::optional<std::string>& dir) {
    for (const auto& doc : oflat::list_examples()) {
        if (!dir) {
            std::cout << *doc.name << "\n";
            continue;
        }
        std::filesystem::create_directories(*dir);
        const auto path = std::filesystem::path(*dir) / (*doc.name + ".fa.json");
        std::ofstream out(path, std::ios::binary);
        out << oflat::serialize_document(doc);
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            return kExitError;
        }
        std::cout << path.string() << "\n";
    }
    return 0;
}

int run_serve(std::optional<int> port) {
    auto options = oflat::options_from_env();
    if (port) options.port = *port;
    oflat::Server server(options);
    const int bound = server.bind();
    std::cout << "listening on port " << bound << std::endl;
    g_server = &server;
    std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
    std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
    server.serve();
    g_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite automaton workbench"};
    app.require_subcommand(1);

    std::string file;
    std::string word;
    bool show_trace = false;
    auto* accept = app.add_subcommand("accept", "Test whether a word is accepted");
    accept->add_option("file", file, "Automaton file (.fa.json)")->required();
    accept->add_option("word", word, "Word to test; \"\" for the empty word")->required();
    accept->add_flag("--trace", show_trace, "Print one line per configuration");

    std::string kind;
    auto* nature = app.add_subcommand("nature", "List productive, accessible or useful states");
    nature->add_option("file", file, "Automaton file (.fa.json)")->required();
    nature->add_option("--kind", kind, "productive|accessible|useful")->required();

    bool dot = false;
    std::optional<std::string> color_word;
    auto* exp = app.add_subcommand("export", "Export the automaton as a DOT digraph");
    exp->add_option("file", file, "Automaton file (.fa.json)")->required();
    exp->add_flag("--dot", dot, "DOT output (the only format)");
    exp->add_option("--color-word", color_word, "Color states by the final view of this word");

    std::optional<std::string> write_dir;
    auto* examples = app.add_subcommand("examples", "List or write the bundled examples");
    examples->add_option("--write", write_dir, "Write each example as <dir>/<name>.fa.json");

    std::optional<int> port;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--port", port, "Port (0 picks a free one); default $OFLAT_PORT or 8080");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    try {
        if (*accept) return run_accept(file, word, show_trace);
        if (*nature) return run_nature(file, kind);
        if (*exp) return run_export(file, color_word);
        if (*examples) return run_examples(write_dir);
        if (*serve) return run_serve(port);
    } catch (const oflat::Error& e) {
        std::cerr << "error: " << oflat::to_string(e.code()) << ": " << e.what();
        if (!e.detail().empty()) std::cerr << " (" << e.detail() << ")";
        std::cerr << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
