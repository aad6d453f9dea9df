#include "axarith/verilog.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace axarith {

namespace {

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$')
            return false;
    return true;
}

const char* primitive_name(GateKind kind) {
    switch (kind) {
        case GateKind::AND2: return "and";
        case GateKind::OR2: return "or";
        case GateKind::XOR2: return "xor";
        case GateKind::NOT1: return "not";
        case GateKind::BUF1: return "buf";
        default: return nullptr;
    }
}

}  // namespace

std::string emit_verilog(const Circuit& circuit, const std::string& module_name) {
    if (!is_ident(module_name))
        throw std::invalid_argument("'" + module_name + "' is not a valid module name");
    {
        std::vector<std::string> problems = validate(circuit);
        if (!problems.empty()) {
            std::string msg = "cannot emit an invalid circuit:";
            for (const std::string& p : problems) msg += "\n  " + p;
            throw std::invalid_argument(msg);
        }
    }
    for (const Port& p : circuit.inputs)
        if (!is_ident(p.name))
            throw std::invalid_argument("'" + p.name + "' is not a valid port name");
    for (const Port& p : circuit.outputs)
        if (!is_ident(p.name))
            throw std::invalid_argument("'" + p.name + "' is not a valid port name");

    // First name wins per net: input names, then output names, then n<k>.
    // Inputs take precedence so an output sharing an input's net becomes a
    // buf alias driven by the input, never the other way around.
    std::vector<std::string> net_name(circuit.net_count);
    std::vector<std::pair<std::string, NetId>> aliases;
    for (const Port& p : circuit.inputs) {
        if (net_name[p.net].empty())
            net_name[p.net] = p.name;
        else
            aliases.emplace_back(p.name, p.net);
    }
    for (const Port& p : circuit.outputs) {
        if (net_name[p.net].empty())
            net_name[p.net] = p.name;
        else
            aliases.emplace_back(p.name, p.net);
    }
    std::vector<NetId> wires;
    for (NetId n = 0; n < circuit.net_count; ++n)
        if (net_name[n].empty()) {
            net_name[n] = "n" + std::to_string(wires.size());
            wires.push_back(n);
        }

    std::ostringstream out;
    out << "module " << module_name << " (";
    bool first = true;
    for (const Port& p : circuit.outputs) {
        out << (first ? "" : ", ") << p.name;
        first = false;
    }
    for (const Port& p : circuit.inputs) {
        out << (first ? "" : ", ") << p.name;
        first = false;
    }
    out << ");\n";
    for (const Port& p : circuit.outputs) out << "  output " << p.name << ";\n";
    for (const Port& p : circuit.inputs) out << "  input " << p.name << ";\n";
    for (NetId n : wires) out << "  wire " << net_name[n] << ";\n";
    out << "\n";
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        if (g.kind == GateKind::CONST0 || g.kind == GateKind::CONST1) {
            out << "  assign " << net_name[g.out] << " = 1'b"
                << (g.kind == GateKind::CONST1 ? '1' : '0') << ";\n";
            continue;
        }
        out << "  " << primitive_name(g.kind) << " g" << i << " (" << net_name[g.out] << ", "
            << net_name[g.a];
        if (gate_arity(g.kind) == 2) out << ", " << net_name[g.b];
        out << ");\n";
    }
    for (std::size_t i = 0; i < aliases.size(); ++i)
        out << "  buf a" << i << " (" << aliases[i].first << ", "
            << net_name[aliases[i].second] << ");\n";
    out << "endmodule\n";
    return out.str();
}

namespace {

struct Token {
    std::string text;
    int line = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip();
        Token t;
        t.line = line_;
        if (pos_ >= text_.size()) return t;  // empty text marks end of input
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size()) {
                const char d = text_[pos_];
                if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '$')
                    break;
                t.text += d;
                ++pos_;
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {  // sized literal like 1'b0
            while (pos_ < text_.size()) {
                const char d = text_[pos_];
                if (!std::isalnum(static_cast<unsigned char>(d)) && d != '\'') break;
                t.text += d;
                ++pos_;
            }
            return t;
        }
        t.text = std::string(1, c);
        ++pos_;
        return t;
    }

  private:
    void skip() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                pos_ += 2;
                while (pos_ + 1 < text_.size() &&
                       !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    if (text_[pos_] == '\n') ++line_;
                    ++pos_;
                }
                pos_ = pos_ + 2 <= text_.size() ? pos_ + 2 : text_.size();
            } else {
                return;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) { advance(); }

    Circuit parse() {
        expect("module");
        module_ = take_ident("module name");
        expect("(");
        if (cur_.text != ")") {
            port_order_.push_back(take_ident("port name"));
            while (accept(",")) port_order_.push_back(take_ident("port name"));
        }
        expect(")");
        expect(";");

        while (cur_.text != "endmodule") {
            if (cur_.text.empty()) fail("unexpected end of input");
            if (cur_.text == "input" || cur_.text == "output" || cur_.text == "wire")
                declaration();
            else if (cur_.text == "assign")
                constant();
            else if (primitive_kind(cur_.text))
                instance();
            else
                fail("unsupported construct '" + cur_.text + "'");
        }
        expect("endmodule");
        if (!cur_.text.empty()) fail("unexpected text after endmodule");
        return finish();
    }

  private:
    enum class Decl { INPUT, OUTPUT, WIRE };

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("line " + std::to_string(cur_.line) + ": " + msg);
    }

    void advance() { cur_ = lex_.next(); }

    bool accept(const std::string& text) {
        if (cur_.text != text) return false;
        advance();
        return true;
    }

    void expect(const std::string& text) {
        if (!accept(text)) fail("expected '" + text + "'");
    }

    std::string take_ident(const std::string& what) {
        if (!is_ident(cur_.text)) fail("expected " + what);
        std::string name = cur_.text;
        advance();
        return name;
    }

    const GateKind* primitive_kind(const std::string& name) const {
        static const std::map<std::string, GateKind> kinds = {{"and", GateKind::AND2},
                                                              {"or", GateKind::OR2},
                                                              {"xor", GateKind::XOR2},
                                                              {"not", GateKind::NOT1},
                                                              {"buf", GateKind::BUF1}};
        auto it = kinds.find(name);
        return it == kinds.end() ? nullptr : &it->second;
    }

    NetId declare(const std::string& name, Decl decl) {
        if (nets_.count(name)) fail("'" + name + "' is already declared");
        const NetId id = static_cast<NetId>(c_.net_count++);
        nets_[name] = id;
        decls_[name] = decl;
        return id;
    }

    NetId lookup(const std::string& name) {
        auto it = nets_.find(name);
        if (it == nets_.end()) fail("'" + name + "' is not declared");
        return it->second;
    }

    void mark_driven(const std::string& name) {
        if (!driven_.insert(lookup(name)).second) fail("'" + name + "' is already driven");
    }

    void declaration() {
        Decl decl = cur_.text == "input" ? Decl::INPUT
                                         : cur_.text == "output" ? Decl::OUTPUT : Decl::WIRE;
        advance();
        while (true) {
            const std::string name = take_ident("net name");
            declare(name, decl);
            if (decl != Decl::WIRE && !in_port_list(name))
                fail("'" + name + "' is not in the port list");
            if (decl == Decl::INPUT) driven_.insert(nets_[name]);
            if (!accept(",")) break;
        }
        expect(";");
    }

    void instance() {
        const GateKind kind = *primitive_kind(cur_.text);
        advance();
        take_ident("instance name");
        expect("(");
        std::vector<std::pair<std::string, int>> conns;
        conns.emplace_back(cur_.text, cur_.line);
        take_ident("net name");
        while (accept(",")) {
            conns.emplace_back(cur_.text, cur_.line);
            take_ident("net name");
        }
        expect(")");
        expect(";");
        const int want = gate_arity(kind) + 1;
        if (static_cast<int>(conns.size()) != want)
            fail("expected " + std::to_string(want) + " connections, got " +
                 std::to_string(conns.size()));
        Gate g;
        g.kind = kind;
        g.out = lookup(conns[0].first);
        if (!driven_.insert(g.out).second)
            throw std::runtime_error("line " + std::to_string(conns[0].second) + ": '" +
                                     conns[0].first + "' is already driven");
        g.a = lookup(conns[1].first);
        g.b = want == 3 ? lookup(conns[2].first) : 0;
        c_.gates.push_back(g);
    }

    void constant() {
        expect("assign");
        const std::string name = cur_.text;
        const int line = cur_.line;
        take_ident("net name");
        expect("=");
        GateKind kind;
        if (accept("1'b0"))
            kind = GateKind::CONST0;
        else if (accept("1'b1"))
            kind = GateKind::CONST1;
        else
            fail("expected 1'b0 or 1'b1");
        expect(";");
        Gate g;
        g.kind = kind;
        g.out = lookup(name);
        if (!driven_.insert(g.out).second)
            throw std::runtime_error("line " + std::to_string(line) + ": '" + name +
                                     "' is already driven");
        c_.gates.push_back(g);
    }

    bool in_port_list(const std::string& name) const {
        for (const std::string& p : port_order_)
            if (p == name) return true;
        return false;
    }

    Circuit finish() {
        // ports materialize in port-list order, outputs and inputs separately
        for (const std::string& name : port_order_) {
            auto it = decls_.find(name);
            if (it == decls_.end() || it->second == Decl::WIRE)
                fail("port '" + name + "' is never declared input or output");
            if (it->second == Decl::OUTPUT)
                c_.outputs.push_back({name, nets_[name]});
            else
                c_.inputs.push_back({name, nets_[name]});
        }
        std::vector<std::string> problems = validate(c_);
        if (!problems.empty()) {
            std::string msg = "line " + std::to_string(cur_.line) + ": module '" + module_ +
                              "' fails validation:";
            for (const std::string& p : problems) msg += "\n  " + p;
            throw std::runtime_error(msg);
        }
        return c_;
    }

    Lexer lex_;
    Token cur_;
    std::string module_;
    std::vector<std::string> port_order_;
    std::map<std::string, NetId> nets_;
    std::map<std::string, Decl> decls_;
    std::set<NetId> driven_;
    Circuit c_;
};

}  // namespace

Circuit reimport_verilog(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

}  // namespace axarith
