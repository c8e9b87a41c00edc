#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "oflat/automaton.hpp"
#include "oflat/error.hpp"
#include "oflat/simulation.hpp"

namespace oflat {

// HTTP status for a canonical error code.
int http_status(ErrorCode code);

nlohmann::json error_json(const Error& e);
nlohmann::json automaton_summary_json(const FiniteAutomaton& a);
// {position, remaining, colors, status, verdict?, wordView, caption}
nlohmann::json session_view_json(const SimulationSession& s);

// The server-held automaton plus the simulation sessions opened on it.
// Replacing or editing the automaton retires every open session; retired ids
// answer SESSION_GONE, never-issued ids answer UNKNOWN_SESSION. Last writer
// wins on concurrent edits.
class Workspace {
public:
    std::optional<FiniteAutomaton> automaton() const;

    // Each edit returns the automaton it installed.
    FiniteAutomaton load(FiniteAutomaton a);
    // Bootstraps a fresh automaton when none is loaded.
    FiniteAutomaton add_state(const StateId& name, bool accept);
    // Throws NO_AUTOMATON when nothing is loaded.
    FiniteAutomaton add_transition(const Transition& t);

    std::set<StateId> nature(NatureKind kind) const;

    std::string open_session(const Word& word);

    using SessionFn = std::function<void(SimulationSession&)>;
    // Runs `fn` with exclusive access to the session.
    void with_session(const std::string& id, const SessionFn& fn);

    std::size_t open_session_count() const;

private:
    struct Slot {
        explicit Slot(SimulationSession s) : session(std::move(s)) {}
        std::mutex mutex;
        SimulationSession session;
    };

    FiniteAutomaton require_automaton() const;
    void install(FiniteAutomaton a);  // caller holds mutex_ exclusively
    std::shared_ptr<Slot> find_slot(const std::string& id) const;

    mutable std::shared_mutex mutex_;
    std::optional<FiniteAutomaton> automaton_;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
    std::set<std::string> retired_;
};

// 128 random bits as lowercase hex.
std::string new_session_id();

struct ServerOptions {
    std::string host = "0.0.0.0";
    int port = 8080;
    std::string ui_dir;  // empty: no static files
};

// OFLAT_PORT and OFLAT_UI_DIR override the defaults.
ServerOptions options_from_env();

class Server {
public:
    explicit Server(ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds the socket; returns the actual port (useful with port 0).
    // Throws std::runtime_error when the port cannot be bound.
    int bind();
    // Blocks until stop().
    void serve();
    void stop();
    bool is_running() const;

    Workspace& workspace() { return workspace_; }

private:
    struct Impl;
    void install_routes();

    ServerOptions options_;
    Workspace workspace_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace oflat
