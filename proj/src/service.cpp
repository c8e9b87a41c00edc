#include "oflat/service.hpp"

#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>

#include "oflat/document.hpp"

namespace oflat {

using nlohmann::json;

namespace {

json state_list(const std::set<StateId>& states) {
    json out = json::array();
    for (const auto& s : states) out.push_back(s);
    return out;
}

json parse_body(const httplib::Request& req) {
    try {
        auto body = json::parse(req.body);
        if (!body.is_object()) throw Error(ErrorCode::MalformedDocument, "body must be a JSON object");
        return body;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, "request body is not valid JSON", e.what());
    }
}

template <typename T>
T field(const json& body, const char* name) {
    const auto it = body.find(name);
    if (it == body.end()) {
        throw Error(ErrorCode::MissingField, std::string("missing field '") + name + "'", name);
    }
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::MalformedDocument, std::string("field '") + name + "' has the wrong type",
                    name);
    }
}

template <typename T>
T field_or(const json& body, const char* name, T fallback) {
    return body.contains(name) ? field<T>(body, name) : fallback;
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
    send_json(res, error_json(e), http_status(e.code()));
}

// Wraps a handler so that canonical errors become {code, message, detail?}.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            send_error(res, e);
        } catch (const std::exception& e) {
            send_json(res, {{"code", "INTERNAL"}, {"message", e.what()}}, 500);
        }
    };
}

std::string sse_event(std::string_view name, const json& data) {
    return "event: " + std::string(name) + "\ndata: " +
           data.dump(-1, ' ', false, json::error_handler_t::replace) + "\n\n";
}

}  // namespace

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoAutomaton: return 409;
        case ErrorCode::UnknownSession: return 404;
        case ErrorCode::SessionGone: return 410;
        default: return 400;
    }
}

json error_json(const Error& e) {
    json out = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (!e.detail().empty()) out["detail"] = e.detail();
    return out;
}

json automaton_summary_json(const FiniteAutomaton& a) {
    json alphabet_list = json::array();
    for (const auto& x : alphabet(a)) alphabet_list.push_back(x.glyph);
    json transitions = json::array();
    for (const auto& t : a.transitions) transitions.push_back({t.from, t.on.glyph, t.to});
    return {{"initialState", a.initial_state},
            {"states", state_list(state_set(a))},
            {"acceptStates", state_list(a.accept_states)},
            {"alphabet", alphabet_list},
            {"deterministic", is_deterministic(a)},
            {"transitions", transitions}};
}

json session_view_json(const SimulationSession& s) {
    const auto view = s.view();
    json colors = json::object();
    for (const auto& [state, color] : view.colors) colors[state] = to_string(color);
    json out = {{"position", s.position()},
                {"remaining", view.remaining},
                {"colors", colors},
                {"status", to_string(s.status())},
                {"wordView", s.word_view()},
                {"caption", view.caption}};
    if (s.status() == SessionStatus::Finished) out["verdict"] = to_string(s.trace().verdict);
    return out;
}

std::optional<FiniteAutomaton> Workspace::automaton() const {
    std::shared_lock lock(mutex_);
    return automaton_;
}

FiniteAutomaton Workspace::require_automaton() const {
    std::shared_lock lock(mutex_);
    if (!automaton_) throw Error(ErrorCode::NoAutomaton, "no automaton loaded");
    return *automaton_;
}

void Workspace::install(FiniteAutomaton a) {
    for (const auto& [id, slot] : sessions_) retired_.insert(id);
    sessions_.clear();
    automaton_ = std::move(a);
}

FiniteAutomaton Workspace::load(FiniteAutomaton a) {
    require_valid(a);
    std::unique_lock lock(mutex_);
    install(a);
    return a;
}

FiniteAutomaton Workspace::add_state(const StateId& name, bool accept) {
    std::unique_lock lock(mutex_);
    FiniteAutomaton next = automaton_ ? oflat::add_state(*automaton_, name)
                                      : new_automaton(name, accept);
    if (accept) next = mark_accept(next, name);
    install(next);
    return next;
}

FiniteAutomaton Workspace::add_transition(const Transition& t) {
    std::unique_lock lock(mutex_);
    if (!automaton_) {
        throw Error(ErrorCode::NoAutomaton, "add a state before adding transitions");
    }
    FiniteAutomaton next = oflat::add_transition(*automaton_, t);
    install(next);
    return next;
}

std::set<StateId> Workspace::nature(NatureKind kind) const {
    return states_of_nature(require_automaton(), kind);
}

std::string Workspace::open_session(const Word& word) {
    std::unique_lock lock(mutex_);
    if (!automaton_) throw Error(ErrorCode::NoAutomaton, "no automaton loaded");
    auto slot = std::make_shared<Slot>(SimulationSession(*automaton_, word));
    std::string id;
    do {
        id = new_session_id();
    } while (sessions_.contains(id) || retired_.contains(id));
    sessions_.emplace(id, std::move(slot));
    return id;
}

std::shared_ptr<Workspace::Slot> Workspace::find_slot(const std::string& id) const {
    std::shared_lock lock(mutex_);
    if (const auto it = sessions_.find(id); it != sessions_.end()) return it->second;
    if (retired_.contains(id)) {
        throw Error(ErrorCode::SessionGone, "session was invalidated by an automaton edit", id);
    }
    throw Error(ErrorCode::UnknownSession, "no such session", id);
}

void Workspace::with_session(const std::string& id, const SessionFn& fn) {
    const auto slot = find_slot(id);
    std::lock_guard lock(slot->mutex);
    fn(slot->session);
}

std::size_t Workspace::open_session_count() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

std::string new_session_id() {
    static thread_local std::random_device device;
    std::string id;
    static constexpr char digits[] = "0123456789abcdef";
    for (int i = 0; i < 4; ++i) {
        auto bits = device();
        for (int j = 0; j < 8; ++j) {
            id += digits[bits & 0xF];
            bits >>= 4;
        }
    }
    return id;
}

ServerOptions options_from_env() {
    ServerOptions options;
    if (const char* port = std::getenv("OFLAT_PORT"); port && *port) {
        options.port = std::stoi(port);
    }
    if (const char* dir = std::getenv("OFLAT_UI_DIR"); dir && *dir) options.ui_dir = dir;
    return options;
}

struct Server::Impl {
    httplib::Server http;
};

Server::Server(ServerOptions options)
    : options_(std::move(options)), impl_(std::make_unique<Impl>()) {
    install_routes();
}

Server::~Server() { stop(); }

int Server::bind() {
    const int port = options_.port == 0 ? impl_->http.bind_to_any_port(options_.host)
                                        : (impl_->http.bind_to_port(options_.host, options_.port)
                                               ? options_.port
                                               : -1);
    if (port < 0) {
        throw std::runtime_error("cannot bind " + options_.host + ":" +
                                 std::to_string(options_.port));
    }
    return port;
}

void Server::serve() { impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

bool Server::is_running() const { return impl_->http.is_running(); }

void Server::install_routes() {
    auto& http = impl_->http;
    auto& ws = workspace_;

    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    if (!options_.ui_dir.empty()) http.set_mount_point("/", options_.ui_dir);

    http.Get("/examples", guarded([](const httplib::Request&, httplib::Response& res) {
        json list = json::array();
        for (const auto& doc : list_examples()) {
            list.push_back({{"name", *doc.name},
                            {"document", json::parse(serialize_document(doc))}});
        }
        send_json(res, {{"examples", list}});
    }));

    http.Get("/automaton", guarded([&ws](const httplib::Request&, httplib::Response& res) {
        const auto a = ws.automaton();
        if (!a) throw Error(ErrorCode::NoAutomaton, "no automaton loaded");
        send_json(res, automaton_summary_json(*a));
    }));

    http.Put("/automaton", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        send_json(res, automaton_summary_json(ws.load(parse_automaton(req.body))));
    }));

    http.Post("/automaton/states", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        const auto a = ws.add_state(field<std::string>(body, "name"), field_or(body, "accept", false));
        send_json(res, automaton_summary_json(a));
    }));

    http.Post("/automaton/transitions",
              guarded([&ws](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req);
                  Transition t{field<std::string>(body, "from"),
                               Symbol(field<std::string>(body, "symbol")),
                               field<std::string>(body, "to")};
                  send_json(res, automaton_summary_json(ws.add_transition(t)));
              }));

    http.Get("/automaton/nature", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        const auto kind = parse_nature_kind(req.get_param_value("kind"));
        const auto states = state_list(ws.nature(kind));
        send_json(res, {{"kind", to_string(kind)}, {"states", states}});
    }));

    http.Post("/sessions", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        const auto id = ws.open_session(make_word(field_or<std::string>(body, "word", "")));
        json view;
        ws.with_session(id, [&](SimulationSession& s) { view = session_view_json(s); });
        send_json(res, {{"sessionId", id}, {"view", view}}, 201);
    }));

    http.Get(R"(/sessions/([0-9a-f]+))",
             guarded([&ws](const httplib::Request& req, httplib::Response& res) {
                 ws.with_session(req.matches[1],
                                 [&](SimulationSession& s) { send_json(res, session_view_json(s)); });
             }));

    http.Post(R"(/sessions/([0-9a-f]+)/forward)",
              guarded([&ws](const httplib::Request& req, httplib::Response& res) {
                  ws.with_session(req.matches[1], [&](SimulationSession& s) {
                      s.step_forward();
                      send_json(res, session_view_json(s));
                  });
              }));

    http.Post(R"(/sessions/([0-9a-f]+)/back)",
              guarded([&ws](const httplib::Request& req, httplib::Response& res) {
                  ws.with_session(req.matches[1], [&](SimulationSession& s) {
                      s.step_back();
                      send_json(res, session_view_json(s));
                  });
              }));

    // Server-sent events: one "tick" per step, then "done" with the final view.
    http.Post(R"(/sessions/([0-9a-f]+)/run)",
              guarded([&ws](const httplib::Request& req, httplib::Response& res) {
                  const std::string id = req.matches[1];
                  const auto body = req.body.empty() ? json::object() : parse_body(req);
                  const auto delay = std::chrono::milliseconds(field_or<long>(body, "delayMs", 500));
                  if (delay.count() < 0) {
                      throw Error(ErrorCode::MalformedDocument, "delayMs must be non-negative");
                  }
                  ws.with_session(id, [](SimulationSession&) {});  // 404/410 before streaming
                  res.set_chunked_content_provider(
                      "text/event-stream", [&ws, id, delay](std::size_t, httplib::DataSink& sink) {
                          try {
                              ws.with_session(id, [&](SimulationSession& s) {
                                  s.run_all(
                                      [&](std::size_t, const ColorView&) {
                                          const auto ev = sse_event("tick", session_view_json(s));
                                          sink.write(ev.data(), ev.size());
                                      },
                                      delay);
                                  const auto ev = sse_event("done", session_view_json(s));
                                  sink.write(ev.data(), ev.size());
                              });
                          } catch (const Error& e) {
                              const auto ev = sse_event("error", error_json(e));
                              sink.write(ev.data(), ev.size());
                          }
                          sink.done();
                          return true;
                      });
              }));
}

}  // namespace oflat
