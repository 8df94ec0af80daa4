#include "ssresf/netlist.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ssresf {

const std::vector<GateDef>& gate_library() {
  static const std::vector<GateDef> lib = {
      {GateType::NOT, "NOT", {"A"}, "Y"},
      {GateType::BUF, "BUF", {"A"}, "Y"},
      {GateType::AND2, "AND2", {"A", "B"}, "Y"},
      {GateType::OR2, "OR2", {"A", "B"}, "Y"},
      {GateType::NAND2, "NAND2", {"A", "B"}, "Y"},
      {GateType::NOR2, "NOR2", {"A", "B"}, "Y"},
      {GateType::XOR2, "XOR2", {"A", "B"}, "Y"},
      {GateType::XNOR2, "XNOR2", {"A", "B"}, "Y"},
      {GateType::MUX2, "MUX2", {"A", "B", "S"}, "Y"},  // Y = S ? B : A
      {GateType::DFF, "DFF", {"D", "CK"}, "Q"},
      {GateType::DFFR, "DFFR", {"D", "CK", "R"}, "Q"},
  };
  return lib;
}

const GateDef* find_gate(const std::string& name) {
  for (const auto& g : gate_library())
    if (name == g.name) return &g;
  return nullptr;
}

const char* gate_name(GateType t) {
  for (const auto& g : gate_library())
    if (g.type == t) return g.name;
  return "?";
}

bool is_sequential_gate(GateType t) {
  return t == GateType::DFF || t == GateType::DFFR;
}

bool eval_gate(GateType t, const std::vector<bool>& in) {
  switch (t) {
    case GateType::NOT: return !in[0];
    case GateType::BUF: return in[0];
    case GateType::AND2: return in[0] && in[1];
    case GateType::OR2: return in[0] || in[1];
    case GateType::NAND2: return !(in[0] && in[1]);
    case GateType::NOR2: return !(in[0] || in[1]);
    case GateType::XOR2: return in[0] != in[1];
    case GateType::XNOR2: return in[0] == in[1];
    case GateType::MUX2: return in[2] ? in[1] : in[0];
    case GateType::DFF:
    case GateType::DFFR: break;
  }
  throw Error(ErrorKind::SyntaxError, "eval_gate on sequential cell");
}

const ModuleDef* NetlistSource::find_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

struct Token {
  enum Kind { Ident, Punct, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    int line = line_, col = col_;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\\' ||
        c == '$') {
      size_t start = pos_;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' ||
            d == '$' || d == '[' || d == ']' || d == '\\') {
          ++pos_;
          ++col_;
        } else {
          break;
        }
      }
      tok_ = {Token::Ident, text_.substr(start, pos_ - start), line, col};
    } else {
      ++pos_;
      ++col_;
      tok_ = {Token::Punct, std::string(1, c), line, col};
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& expected) {
  std::ostringstream os;
  os << "line " << t.line << " col " << t.col << ": expected " << expected
     << ", got '" << (t.kind == Token::End ? "<eof>" : t.text) << "'";
  throw Error(ErrorKind::SyntaxError, os.str());
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  NetlistSource parse() {
    NetlistSource src;
    if (lex_.peek().kind == Token::End)
      syntax_error(lex_.peek(), "'module'");
    while (lex_.peek().kind != Token::End) src.modules.push_back(parse_module());
    validate(src);
    return src;
  }

 private:
  Token expect_ident() {
    if (lex_.peek().kind != Token::Ident) syntax_error(lex_.peek(), "identifier");
    return lex_.next();
  }

  Token expect_punct(const char* p) {
    if (lex_.peek().kind != Token::Punct || lex_.peek().text != p)
      syntax_error(lex_.peek(), std::string("'") + p + "'");
    return lex_.next();
  }

  bool accept_punct(const char* p) {
    if (lex_.peek().kind == Token::Punct && lex_.peek().text == p) {
      lex_.next();
      return true;
    }
    return false;
  }

  Token expect_keyword(const char* kw) {
    if (lex_.peek().kind != Token::Ident || lex_.peek().text != kw)
      syntax_error(lex_.peek(), std::string("'") + kw + "'");
    return lex_.next();
  }

  ModuleDef parse_module() {
    expect_keyword("module");
    ModuleDef mod;
    mod.name = expect_ident().text;
    expect_punct("(");
    if (!accept_punct(")")) {
      for (;;) {
        Token dir = expect_ident();
        PortDir d;
        if (dir.text == "input")
          d = PortDir::Input;
        else if (dir.text == "output")
          d = PortDir::Output;
        else
          syntax_error(dir, "'input' or 'output'");
        mod.ports.push_back({d, expect_ident().text});
        if (accept_punct(")")) break;
        expect_punct(",");
      }
    }
    expect_punct(";");
    while (!(lex_.peek().kind == Token::Ident && lex_.peek().text == "endmodule")) {
      if (lex_.peek().kind == Token::Ident && lex_.peek().text == "wire") {
        lex_.next();
        mod.wires.push_back(expect_ident().text);
        while (accept_punct(",")) mod.wires.push_back(expect_ident().text);
        expect_punct(";");
      } else {
        mod.instances.push_back(parse_instance());
      }
    }
    lex_.next();  // endmodule
    return mod;
  }

  Instance parse_instance() {
    Instance inst;
    Token master = expect_ident();
    inst.master = master.text;
    inst.line = master.line;
    inst.name = expect_ident().text;
    expect_punct("(");
    for (;;) {
      Connection conn;
      if (accept_punct(".")) {
        conn.port = expect_ident().text;
        expect_punct("(");
        conn.net = expect_ident().text;
        expect_punct(")");
      } else {
        conn.net = expect_ident().text;
      }
      inst.conns.push_back(conn);
      if (accept_punct(")")) break;
      expect_punct(",");
    }
    expect_punct(";");
    return inst;
  }

  // Master/net resolution runs after all modules are read, so forward
  // references between modules are legal.
  static void validate(NetlistSource& src) {
    std::unordered_set<std::string> names;
    for (const auto& m : src.modules)
      if (!names.insert(m.name).second)
        throw Error(ErrorKind::DuplicateModule, m.name);

    for (auto& mod : src.modules) {
      std::unordered_set<std::string> nets;
      for (const auto& p : mod.ports) nets.insert(p.name);
      for (const auto& w : mod.wires) nets.insert(w);

      for (auto& inst : mod.instances) {
        std::vector<std::string> port_order;
        const GateDef* gate = find_gate(inst.master);
        if (gate) {
          for (const char* p : gate->inputs) port_order.emplace_back(p);
          port_order.emplace_back(gate->output);
        } else if (const ModuleDef* sub = src.find_module(inst.master)) {
          for (const auto& p : sub->ports) port_order.push_back(p.name);
        } else {
          throw Error(ErrorKind::UnknownMaster, inst.master);
        }

        std::unordered_set<std::string> valid(port_order.begin(), port_order.end());
        std::unordered_set<std::string> seen;
        for (size_t i = 0; i < inst.conns.size(); ++i) {
          auto& conn = inst.conns[i];
          if (conn.port.empty()) {
            if (i >= port_order.size())
              throw Error(ErrorKind::SyntaxError,
                          "too many positional connections on instance " +
                              inst.name + " of " + inst.master);
            conn.port = port_order[i];
          }
          if (!valid.count(conn.port))
            throw Error(ErrorKind::SyntaxError,
                        "no port '" + conn.port + "' on master " + inst.master);
          if (!seen.insert(conn.port).second)
            throw Error(ErrorKind::SyntaxError,
                        "port '" + conn.port + "' connected twice on instance " +
                            inst.name);
          if (!nets.count(conn.net))
            throw Error(ErrorKind::UndeclaredNet,
                        conn.net + " in module " + mod.name);
        }
      }
    }
  }

  Lexer lex_;
};

}  // namespace

NetlistSource parse_netlist(const std::string& text) {
  return Parser(text).parse();
}

std::string print_netlist(const NetlistSource& src) {
  std::ostringstream os;
  for (const auto& mod : src.modules) {
    os << "module " << mod.name << "(";
    for (size_t i = 0; i < mod.ports.size(); ++i) {
      if (i) os << ", ";
      os << (mod.ports[i].dir == PortDir::Input ? "input " : "output ")
         << mod.ports[i].name;
    }
    os << ");\n";
    if (!mod.wires.empty()) {
      os << "  wire";
      for (size_t i = 0; i < mod.wires.size(); ++i)
        os << (i ? ", " : " ") << mod.wires[i];
      os << ";\n";
    }
    for (const auto& inst : mod.instances) {
      os << "  " << inst.master << " " << inst.name << "(";
      for (size_t i = 0; i < inst.conns.size(); ++i) {
        if (i) os << ", ";
        os << "." << inst.conns[i].port << "(" << inst.conns[i].net << ")";
      }
      os << ");\n";
    }
    os << "endmodule\n";
  }
  return os.str();
}

}  // namespace ssresf
