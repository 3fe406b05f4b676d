#include "mphase/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mphase {

namespace {

struct Token {
    enum class Kind { Ident, Number, String, LBrace, RBrace, Equals, End };
    Kind kind = Kind::End;
    std::string text;
    double number = 0.0;
    int line = 0;
};

class Lexer {
public:
    Lexer(const std::string& text, std::string name) : text_(text), name_(std::move(name)) {}

    Token next() {
        skip();
        Token t;
        t.line = line_;
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        if (c == '{' || c == '}' || c == '=') {
            ++pos_;
            t.kind = c == '{' ? Token::Kind::LBrace
                              : (c == '}' ? Token::Kind::RBrace : Token::Kind::Equals);
            t.text = c;
            return t;
        }
        if (c == '"') {
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') fail("unterminated string", line_);
                t.text.push_back(text_[pos_++]);
            }
            if (pos_ >= text_.size()) fail("unterminated string", line_);
            ++pos_;
            t.kind = Token::Kind::String;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                    text_[pos_] == '-'))
                t.text.push_back(text_[pos_++]);
            t.kind = Token::Kind::Ident;
            return t;
        }
        // number
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '{' && text_[pos_] != '}' && text_[pos_] != '=' &&
               text_[pos_] != '#')
            ++pos_;
        t.text = text_.substr(start, pos_ - start);
        try {
            std::size_t used = 0;
            t.number = std::stod(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument(t.text);
        } catch (const std::exception&) {
            fail("unexpected token '" + t.text + "'", t.line);
        }
        t.kind = Token::Kind::Number;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, int line) const {
        throw ConfigError(name_ + ":" + std::to_string(line) + ": " + msg);
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::string name_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

struct KeyValue {
    std::string key;
    Token value;
};

std::vector<double> parse_number_list(const std::string& text, const Lexer& lex, int line) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == ",") continue;
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            lex.fail("bad number '" + tok + "' in list", line);
        }
    }
    return out;
}

Profile profile_from(const Token& value, const Lexer& lex) {
    if (value.kind == Token::Kind::Number)
        return Profile{Profile::Kind::Constant, value.number, 0.0};
    if (value.kind != Token::Kind::String) lex.fail("expected number or profile string", value.line);
    try {
        return parse_profile(value.text);
    } catch (const ConfigError& e) {
        lex.fail(e.what(), value.line);
    }
}

double number_from(const Token& value, const Lexer& lex) {
    if (value.kind != Token::Kind::Number) lex.fail("expected a number", value.line);
    return value.number;
}

std::string string_from(const Token& value, const Lexer& lex) {
    if (value.kind != Token::Kind::String) lex.fail("expected a quoted string", value.line);
    return value.text;
}

} // namespace

Profile parse_profile(const std::string& text) {
    std::istringstream in(text);
    std::string name;
    if (!(in >> name)) throw ConfigError("empty profile");
    std::vector<double> args;
    double x = 0.0;
    while (in >> x) args.push_back(x);
    if (name == "constant") {
        if (args.size() != 1) throw ConfigError("profile 'constant' needs one argument");
        return {Profile::Kind::Constant, args[0], 0.0};
    }
    if (name == "linear-ramp" || name == "linear-ramp-y") {
        if (args.size() != 2)
            throw ConfigError("profile '" + name + "' needs two arguments");
        return {name == "linear-ramp" ? Profile::Kind::LinearRampX : Profile::Kind::LinearRampY,
                args[0], args[1]};
    }
    // a bare number also works
    try {
        std::size_t used = 0;
        const double v = std::stod(name, &used);
        if (used == name.size() && args.empty()) return {Profile::Kind::Constant, v, 0.0};
    } catch (const std::exception&) {
    }
    throw ConfigError("unknown profile '" + name + "'");
}

std::vector<double> materialize(const Profile& pr, const Grid& g) {
    std::vector<double> out(static_cast<std::size_t>(g.cells()));
    for (int i = 0; i < g.cells(); ++i) {
        switch (pr.kind) {
        case Profile::Kind::Constant: out[i] = pr.a; break;
        case Profile::Kind::LinearRampX: {
            const double t = (i % g.nx + 0.5) / g.nx;
            out[i] = pr.a + (pr.b - pr.a) * t;
            break;
        }
        case Profile::Kind::LinearRampY: {
            const double t = (i / g.nx + 0.5) / g.ny;
            out[i] = pr.a + (pr.b - pr.a) * t;
            break;
        }
        }
    }
    return out;
}

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    Lexer lex(text, name);
    RunConfig cfg;
    bool saw_phase = false;

    Token tok = lex.next();
    while (tok.kind != Token::Kind::End) {
        if (tok.kind != Token::Kind::Ident) lex.fail("expected a block name", tok.line);
        const std::string block = tok.text;
        const int block_line = tok.line;
        Token brace = lex.next();
        if (brace.kind != Token::Kind::LBrace) lex.fail("expected '{' after '" + block + "'",
                                                        brace.line);
        std::vector<KeyValue> entries;
        Token t = lex.next();
        while (t.kind != Token::Kind::RBrace) {
            if (t.kind == Token::Kind::End) lex.fail("unterminated block '" + block + "'",
                                                     block_line);
            if (t.kind != Token::Kind::Ident) lex.fail("expected a key", t.line);
            KeyValue kv;
            kv.key = t.text;
            Token eq = lex.next();
            if (eq.kind != Token::Kind::Equals) lex.fail("expected '=' after '" + kv.key + "'",
                                                         eq.line);
            kv.value = lex.next();
            if (kv.value.kind != Token::Kind::Number && kv.value.kind != Token::Kind::String)
                lex.fail("expected a value for '" + kv.key + "'", kv.value.line);
            entries.push_back(std::move(kv));
            t = lex.next();
        }

        if (block == "grid") {
            for (const auto& kv : entries) {
                if (kv.key == "nx") cfg.nx = static_cast<int>(number_from(kv.value, lex));
                else if (kv.key == "ny") cfg.ny = static_cast<int>(number_from(kv.value, lex));
                else if (kv.key == "hx") cfg.hx = number_from(kv.value, lex);
                else if (kv.key == "hy") cfg.hy = number_from(kv.value, lex);
                else lex.fail("unknown key '" + kv.key + "' in block 'grid'", kv.value.line);
            }
        } else if (block == "phase") {
            PhaseConfig ph;
            for (const auto& kv : entries) {
                if (kv.key == "weight") ph.weight = profile_from(kv.value, lex);
                else if (kv.key == "exponent") ph.exponent = profile_from(kv.value, lex);
                else lex.fail("unknown key '" + kv.key + "' in block 'phase'", kv.value.line);
            }
            if (!saw_phase) {
                cfg.phases.clear();
                saw_phase = true;
            }
            cfg.phases.push_back(ph);
        } else if (block == "reaction") {
            for (const auto& kv : entries) {
                if (kv.key == "alpha") cfg.reaction.alpha = number_from(kv.value, lex);
                else if (kv.key == "q1") cfg.reaction.q1 = profile_from(kv.value, lex);
                else if (kv.key == "q2") cfg.reaction.q2 = profile_from(kv.value, lex);
                else if (kv.key == "r") cfg.reaction.r = profile_from(kv.value, lex);
                else if (kv.key == "kappa") cfg.reaction.kappa = profile_from(kv.value, lex);
                else if (kv.key == "lambda0") cfg.reaction.lambda0 = number_from(kv.value, lex);
                else lex.fail("unknown key '" + kv.key + "' in block 'reaction'", kv.value.line);
            }
        } else if (block == "solver") {
            for (const auto& kv : entries) {
                if (kv.key == "grad_tol") cfg.solver.grad_tol = number_from(kv.value, lex);
                else if (kv.key == "max_iters")
                    cfg.solver.max_iters = static_cast<int>(number_from(kv.value, lex));
                else if (kv.key == "armijo_c") cfg.solver.armijo_c = number_from(kv.value, lex);
                else if (kv.key == "step_init") cfg.solver.step_init = number_from(kv.value, lex);
                else if (kv.key == "eps_schedule")
                    cfg.solver.epsilon_schedule =
                        parse_number_list(string_from(kv.value, lex), lex, kv.value.line);
                else if (kv.key == "gradient_model") {
                    const std::string m = string_from(kv.value, lex);
                    if (m == "face") cfg.solver.gradient_model = GradientModel::Face;
                    else if (m == "cell") cfg.solver.gradient_model = GradientModel::Cell;
                    else lex.fail("gradient_model must be \"face\" or \"cell\"", kv.value.line);
                } else lex.fail("unknown key '" + kv.key + "' in block 'solver'", kv.value.line);
            }
        } else if (block == "run") {
            for (const auto& kv : entries) {
                if (kv.key == "lambda") cfg.run.lambda = number_from(kv.value, lex);
                else if (kv.key == "tau") cfg.run.tau = number_from(kv.value, lex);
                else if (kv.key == "steps")
                    cfg.run.steps = static_cast<int>(number_from(kv.value, lex));
                else if (kv.key == "steady_tol") cfg.run.steady_tol = number_from(kv.value, lex);
                else if (kv.key == "iter_tol") cfg.run.iter_tol = number_from(kv.value, lex);
                else if (kv.key == "max_outer")
                    cfg.run.max_outer = static_cast<int>(number_from(kv.value, lex));
                else if (kv.key == "seed")
                    cfg.run.seed = static_cast<std::uint64_t>(number_from(kv.value, lex));
                else lex.fail("unknown key '" + kv.key + "' in block 'run'", kv.value.line);
            }
        } else {
            lex.fail("unknown block '" + block + "'", block_line);
        }
        tok = lex.next();
    }

    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

Grid RunConfig::make_grid() const {
    const double sx = hx ? *hx : 1.0 / nx;
    const double sy = hy ? *hy : 1.0 / ny;
    try {
        return Grid(nx, ny, sx, sy);
    } catch (const Error& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

PhaseSpec RunConfig::make_phase_spec(const Grid& g) const {
    try {
        std::vector<Phase> list;
        for (const PhaseConfig& pc : phases) {
            Phase ph;
            ph.weight = materialize(pc.weight, g);
            ph.exponent = build_exponent_field(materialize(pc.exponent, g), g);
            list.push_back(std::move(ph));
        }
        return mphase::make_phase_spec(std::move(list), g);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("phase: ") + e.what());
    }
}

ReactionSource RunConfig::make_reaction(const Grid& g) const {
    try {
        return make_reaction_source(g, reaction.alpha, materialize(reaction.q1, g),
                                    materialize(reaction.q2, g), materialize(reaction.r, g),
                                    materialize(reaction.kappa, g), reaction.lambda0);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("reaction: ") + e.what());
    }
}

double RunConfig::require_lambda() const {
    if (!run.lambda) throw ConfigError("run block is missing 'lambda'");
    return *run.lambda;
}

} // namespace mphase
