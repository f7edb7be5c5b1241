#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fsc/apply.hpp"
#include "fsc/regex.hpp"

namespace fsc {

struct ScriptError : std::runtime_error {
  std::size_t line;
  ScriptError(const std::string& msg, std::size_t l)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct SessionOptions {
  std::size_t limit = kDefaultLimit;
  bool debug_intermediates = false;
};

struct Session {
  Environment env;
  std::vector<Network> stack;  // most recent on top (back)
  SessionOptions options;

  const Network& top(std::size_t line) const {
    if (stack.empty()) throw ScriptError("no network on the stack", line);
    return stack.back();
  }
};

inline std::size_t env_limit() {
  if (const char* v = std::getenv("FSC_LIMIT")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return kDefaultLimit;
}

namespace detail {

// Strip comments: `!` to end of line, `#` to end of line unless part of
// the boundary marker `.#.`. Tracks double-quoted strings.
inline std::string strip_comments(const std::string& line) {
  std::string out;
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_str) {
      out += c;
      if (c == '"') in_str = false;
      continue;
    }
    if (c == '"') {
      in_str = true;
      out += c;
      continue;
    }
    if (c == '%' && i + 1 < line.size()) {
      out += c;
      out += line[++i];
      continue;
    }
    if (c == '!') break;
    if (c == '#') {
      bool boundary = i > 0 && line[i - 1] == '.' && i + 1 < line.size() && line[i + 1] == '.';
      if (!boundary) break;
    }
    out += c;
  }
  return out;
}

struct Statement {
  std::string text;
  std::size_t line;  // 1-based line where the statement starts
};

inline std::vector<Statement> split_statements(std::istream& is) {
  std::vector<Statement> stmts;
  std::string buf;
  std::size_t start_line = 1, line_no = 0;
  bool in_str = false, escaped = false;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    std::string body = strip_comments(line);
    for (char c : body) {
      if (buf.empty() && std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      if (buf.empty()) start_line = line_no;
      if (escaped) {
        buf += c;
        escaped = false;
        continue;
      }
      if (!in_str && c == '%') escaped = true;
      if (c == '"') in_str = !in_str;
      if (c == ';' && !in_str) {
        stmts.push_back(Statement{buf, start_line});
        buf.clear();
      } else {
        buf += c;
      }
    }
    if (!buf.empty()) buf += ' ';
    in_str = false;  // strings do not span lines
  }
  // trailing content without ';'
  std::string tail = buf;
  while (!tail.empty() && std::isspace(static_cast<unsigned char>(tail.back()))) tail.pop_back();
  if (!tail.empty()) throw ScriptError("statement not terminated by ';'", start_line);
  return stmts;
}

inline std::string take_word(std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t j = i;
  while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
  std::string w = s.substr(i, j - i);
  s.erase(0, j);
  return w;
}

inline std::string trim_ws(std::string s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

inline std::string unquote(const std::string& s, std::size_t line) {
  std::string t = trim_ws(s);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') return t.substr(1, t.size() - 2);
  if (!t.empty() && t.front() != '"') return t;  // bare word allowed
  throw ScriptError("malformed string argument: " + s, line);
}

inline void print_result(const ApplyResult& res, std::ostream& os) {
  if (res.outputs.empty()) {
    os << "+?\n";
    return;
  }
  for (const std::string& s : res.outputs) os << s << '\n';
  if (res.truncated) os << "+∞\n";
}

}  // namespace detail

inline void execute_statement(Session& session, const std::string& stmt, std::size_t line,
                              std::ostream& os) {
  std::string rest = stmt;
  std::string cmd = detail::take_word(rest);
  try {
    if (cmd == "define") {
      std::string name = detail::take_word(rest);
      if (name.empty()) throw ScriptError("define needs a name", line);
      std::string body = detail::trim_ws(rest);
      if (!body.empty() && body.front() == ':') body = detail::trim_ws(body.substr(1));
      if (body.empty()) throw ScriptError("define needs a regular expression", line);
      session.env.bindings[name] = compile(body, session.env);
    } else if (cmd == "regex") {
      session.stack.push_back(compile(detail::trim_ws(rest), session.env));
    } else if (cmd == "apply") {
      std::string dir = detail::take_word(rest);
      if (dir != "up" && dir != "down") throw ScriptError("apply needs 'up' or 'down'", line);
      std::string input = detail::unquote(rest, line);
      ApplyResult res = apply(session.top(line), input,
                              dir == "down" ? ApplyDir::Down : ApplyDir::Up,
                              session.options.limit);
      detail::print_result(res, os);
    } else if (cmd == "words") {
      std::string side = detail::take_word(rest);
      std::string count = detail::take_word(rest);
      std::size_t limit = count.empty() ? session.options.limit : std::stoul(count);
      ApplyResult res;
      if (side == "upper") res = enumerate_words(session.top(line), Side::Upper, limit);
      else if (side == "lower") res = enumerate_words(session.top(line), Side::Lower, limit);
      else if (side == "pairs") res = enumerate_pairs(session.top(line), limit);
      else throw ScriptError("words needs 'upper', 'lower' or 'pairs'", line);
      detail::print_result(res, os);
    } else if (cmd == "save") {
      std::string name = detail::take_word(rest);
      std::string file = detail::take_word(rest);
      if (file.empty()) throw ScriptError("save needs NAME FILE", line);
      const Network* n = session.env.find(name);
      if (!n) throw ScriptError("undefined network: " + name, line);
      save_network(*n, file);
    } else if (cmd == "load") {
      std::string name = detail::take_word(rest);
      std::string file = detail::take_word(rest);
      if (file.empty()) throw ScriptError("load needs NAME FILE", line);
      session.env.bindings[name] = load_network(file);
    } else if (cmd == "print") {
      std::string what = detail::take_word(rest);
      const Network& n = session.top(line);
      if (what == "sigma") {
        for (SymbolId s : n.sigma) os << symbol_name(s) << '\n';
      } else if (what == "size") {
        os << n.num_states() << " states, " << n.num_arcs() << " arcs, " << n.sigma.size()
           << " symbols\n";
      } else {
        throw ScriptError("print needs 'sigma' or 'size'", line);
      }
    } else if (cmd == "set") {
      std::string what = detail::take_word(rest);
      if (what != "limit") throw ScriptError("set needs 'limit N'", line);
      std::string n = detail::take_word(rest);
      std::size_t v = std::stoul(n);
      if (v == 0) throw ScriptError("limit must be positive", line);
      session.options.limit = v;
    } else {
      throw ScriptError("unknown command: " + cmd, line);
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScriptError(e.what(), line);
  }
}

inline int run_script_stream(std::istream& is, std::ostream& os, Session* external = nullptr) {
  Session local;
  Session& session = external ? *external : local;
  if (!external) session.options.limit = env_limit();
  std::vector<detail::Statement> stmts;
  try {
    stmts = detail::split_statements(is);
    for (const auto& s : stmts) execute_statement(session, s.text, s.line, os);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

inline int run_script(const std::string& path, std::ostream& os = std::cout) {
  std::ifstream is(path);
  if (!is) {
    std::cerr << "error: cannot open script: " << path << '\n';
    return 3;
  }
  return run_script_stream(is, os);
}

}  // namespace fsc
