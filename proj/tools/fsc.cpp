#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fsc/script.hpp"

namespace {

int cmd_compile(const std::string& expr, const std::string& script, const std::string& out) {
  try {
    fsc::Network net;
    if (!expr.empty()) {
      net = fsc::compile(expr);
    } else {
      std::ifstream is(script);
      if (!is) {
        std::cerr << "error: cannot open script: " << script << '\n';
        return 3;
      }
      fsc::Session session;
      session.options.limit = fsc::env_limit();
      auto stmts = fsc::detail::split_statements(is);
      for (const auto& s : stmts) fsc::execute_statement(session, s.text, s.line, std::cout);
      if (session.stack.empty()) {
        std::cerr << "error: script left no network on the stack\n";
        return 2;
      }
      net = session.stack.back();
    }
    fsc::save_network(net, out);
    return 0;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_apply(const std::string& file, bool up, std::size_t limit) {
  fsc::Network net;
  try {
    net = fsc::load_network(file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  std::string line;
  while (std::getline(std::cin, line)) {
    try {
      fsc::ApplyResult res =
          fsc::apply(net, line, up ? fsc::ApplyDir::Up : fsc::ApplyDir::Down, limit);
      if (res.outputs.empty()) {
        std::cout << "+?\n";
        continue;
      }
      for (std::size_t i = 0; i < res.outputs.size(); ++i) {
        if (i) std::cout << '\t';
        std::cout << res.outputs[i];
      }
      if (res.truncated) std::cout << "\t+∞";
      std::cout << '\n';
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 0;
}

int cmd_info(const std::string& file) {
  try {
    fsc::Network net = fsc::load_network(file);
    std::cout << "states: " << net.num_states() << '\n'
              << "arcs: " << net.num_arcs() << '\n'
              << "final states: " << net.finals.size() << '\n'
              << "sigma: " << net.sigma.size() << '\n'
              << "type: " << (net.is_relation() ? "transducer" : "acceptor") << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-state calculus with parallel replacement rules"};
  app.require_subcommand(1);

  std::string expr, script, out_file, net_file;
  bool up = false, down = false;
  std::size_t limit = fsc::env_limit();

  auto* compile = app.add_subcommand("compile", "compile a regular expression or script");
  auto* opt_e = compile->add_option("-e,--expr", expr, "regular expression to compile");
  auto* opt_f = compile->add_option("-f,--file", script, "script file; top of stack is saved");
  compile->add_option("-o,--output", out_file, "output network file")->required();
  opt_e->excludes(opt_f);

  auto* apply = app.add_subcommand("apply", "apply a network to stdin lines");
  apply->add_option("-f,--file", net_file, "network file")->required();
  auto* opt_up = apply->add_flag("--up", up, "apply upward (surface to lexical)");
  auto* opt_down = apply->add_flag("--down", down, "apply downward (lexical to surface)");
  apply->add_option("--limit", limit, "maximum outputs per input");
  opt_up->excludes(opt_down);

  auto* info = app.add_subcommand("info", "print network statistics");
  info->add_option("-f,--file", net_file, "network file")->required();

  auto* run = app.add_subcommand("run", "run a script file");
  run->add_option("file", script, "script file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (compile->parsed()) {
    if (expr.empty() && script.empty()) {
      std::cerr << "error: compile needs -e or -f\n";
      return 1;
    }
    return cmd_compile(expr, script, out_file);
  }
  if (apply->parsed()) {
    if (!up && !down) down = true;
    return cmd_apply(net_file, up, limit);
  }
  if (info->parsed()) return cmd_info(net_file);
  if (run->parsed()) return fsc::run_script(script);
  return 1;
}
