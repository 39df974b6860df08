#include "vass/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vass {

namespace {

struct Token {
    std::string text;
    size_t column;
};

std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    std::string cur;
    size_t cur_col = 0;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back(Token{cur, cur_col});
            cur.clear();
        }
    };
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '(' || c == ')' || c == ',' || c == '[' || c == ']' || c == '=') {
            flush();
            out.push_back(Token{std::string(1, c), i + 1});
            continue;
        }
        if (cur.empty())
            cur_col = i + 1;
        cur += c;
    }
    flush();
    return out;
}

class LineParser {
public:
    LineParser(size_t line_no, std::vector<Token> tokens)
        : line_(line_no), tokens_(std::move(tokens)) {}

    bool done() const { return pos_ >= tokens_.size(); }
    [[noreturn]] void fail(const std::string& what) const {
        size_t col = pos_ < tokens_.size() ? tokens_[pos_].column
                     : tokens_.empty()     ? 1
                                           : tokens_.back().column;
        throw ParseError(line_, col, what);
    }
    const std::string& peek() const {
        if (done())
            fail("unexpected end of line");
        return tokens_[pos_].text;
    }
    std::string next(const char* what) {
        if (done())
            fail(std::string("expected ") + what);
        return tokens_[pos_++].text;
    }
    void expect(const std::string& tok) {
        if (done() || tokens_[pos_].text != tok)
            fail("expected '" + tok + "'");
        ++pos_;
    }
    bool try_consume(const std::string& tok) {
        if (!done() && tokens_[pos_].text == tok) {
            ++pos_;
            return true;
        }
        return false;
    }
    void end() {
        if (!done())
            fail("trailing tokens");
    }
    size_t line() const { return line_; }

private:
    size_t line_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

bool is_nat_token(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return c >= '0' && c <= '9';
    });
}

bool is_int_token(const std::string& s) {
    if (s.empty())
        return false;
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return start < s.size() && std::all_of(s.begin() + start, s.end(), [](char c) {
        return c >= '0' && c <= '9';
    });
}

class ModelBuilder {
public:
    Vass v;
    bool have_dim = false;
    bool have_alphabet = false;
    bool have_init = false;
    bool explicit_states = false;
    bool eps_on = false;
    bool have_singleton = false;
    int acceptance_kind = -1; // 0 up, 1 down, 2 updown, 3 singleton
    std::vector<UpAtom> up_atoms;
    std::vector<DownAtom> down_atoms;
    std::vector<UpdownAtom> updown_atoms;
    Configuration singleton;
    std::vector<DownAtom> hole_atoms;
    std::unordered_map<std::string, StateId> state_ids;

    StateId state(LineParser& p, const std::string& name) {
        auto it = state_ids.find(name);
        if (it != state_ids.end())
            return it->second;
        if (explicit_states)
            p.fail("unknown state '" + name + "'");
        StateId q = v.add_state(name);
        state_ids.emplace(name, q);
        return q;
    }

    void need_dim(LineParser& p) {
        if (!have_dim)
            p.fail("dim must be declared first");
    }

    NatVec nat_vec(LineParser& p) {
        need_dim(p);
        NatVec out;
        p.expect("(");
        for (size_t i = 0; i < v.dim; ++i) {
            if (i)
                p.expect(",");
            std::string t = p.next("natural");
            if (t == "w")
                p.fail("omega is not allowed here");
            if (!is_nat_token(t))
                p.fail("expected a natural, got '" + t + "'");
            out.push_back(Nat::from_string(t));
        }
        p.expect(")");
        return out;
    }

    OmegaVec omega_vec(LineParser& p) {
        need_dim(p);
        OmegaVec out;
        p.expect("(");
        for (size_t i = 0; i < v.dim; ++i) {
            if (i)
                p.expect(",");
            std::string t = p.next("natural or w");
            if (t == "w")
                out.push_back(NatOmega::omega());
            else if (is_nat_token(t))
                out.push_back(NatOmega(Nat::from_string(t)));
            else
                p.fail("expected a natural or 'w', got '" + t + "'");
        }
        p.expect(")");
        return out;
    }

    EffVec eff_vec(LineParser& p) {
        need_dim(p);
        EffVec out;
        p.expect("(");
        for (size_t i = 0; i < v.dim; ++i) {
            if (i)
                p.expect(",");
            std::string t = p.next("integer");
            if (!is_int_token(t))
                p.fail("expected an integer, got '" + t + "'");
            out.push_back(Int::from_string(t));
        }
        p.expect(")");
        return out;
    }
};

} // namespace

Vass parse_model(const std::string& text) {
    ModelBuilder b;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize_line(line);
        if (tokens.empty())
            continue;
        LineParser p(line_no, std::move(tokens));
        std::string head = p.next("directive");
        if (head == "vass") {
            b.v.name = p.next("name");
            p.end();
        } else if (head == "dim") {
            std::string d = p.next("dimension");
            if (!is_nat_token(d))
                p.fail("expected a dimension");
            b.v.dim = static_cast<size_t>(Nat::from_string(d).to_uint64());
            b.have_dim = true;
            p.end();
        } else if (head == "alphabet") {
            while (!p.done())
                b.v.alphabet.push_back(p.next("symbol"));
            b.have_alphabet = true;
        } else if (head == "states") {
            while (!p.done())
                b.state(p, p.next("state"));
            b.explicit_states = true;
        } else if (head == "eps") {
            p.expect("on");
            p.end();
            b.eps_on = true;
            b.v.eps_allowed = true;
        } else if (head == "init") {
            StateId q = b.state(p, p.next("state"));
            b.v.initial = Configuration{q, b.nat_vec(p)};
            p.end();
            b.have_init = true;
        } else if (head == "trans") {
            if (!b.have_alphabet)
                p.fail("alphabet must be declared before transitions");
            StateId src = b.state(p, p.next("state"));
            std::string label = p.next("label");
            Symbol sym;
            if (label == "eps") {
                if (!b.eps_on)
                    p.fail("eps transition without 'eps on'");
                sym = EPSILON;
            } else {
                sym = b.v.symbol(label);
                if (sym < 0)
                    p.fail("unknown symbol '" + label + "'");
            }
            EffVec eff = b.eff_vec(p);
            StateId dst = b.state(p, p.next("state"));
            p.end();
            b.v.add_transition(Transition{src, sym, std::move(eff), dst});
        } else if (head == "accept") {
            std::string kind = p.next("acceptance kind");
            int code = kind == "upward"     ? 0
                       : kind == "downward" ? 1
                       : kind == "updown"   ? 2
                       : kind == "singleton" ? 3
                                             : -1;
            if (code < 0)
                p.fail("unknown acceptance kind '" + kind + "'");
            if (b.acceptance_kind >= 0 && b.acceptance_kind != code)
                p.fail("conflicting acceptance kinds");
            b.acceptance_kind = code;
            if (p.done())
                continue; // bare kind declaration, no atom
            StateId q = b.state(p, p.next("state"));
            if (code == 0) {
                b.up_atoms.push_back(UpAtom{q, b.nat_vec(p)});
                p.end();
            } else if (code == 1) {
                b.down_atoms.push_back(DownAtom{q, b.omega_vec(p)});
                p.end();
            } else if (code == 3) {
                if (b.have_singleton)
                    p.fail("duplicate singleton acceptance");
                b.singleton = Configuration{q, b.nat_vec(p)};
                b.have_singleton = true;
                p.end();
            } else {
                b.need_dim(p);
                UpdownAtom atom;
                atom.state = q;
                p.expect("up");
                p.expect("[");
                while (!p.try_consume("]")) {
                    if (!atom.up_coords.empty())
                        p.expect(",");
                    std::string t = p.next("coordinate");
                    if (!is_nat_token(t))
                        p.fail("expected a coordinate index");
                    uint64_t c = Nat::from_string(t).to_uint64();
                    if (c < 1 || c > b.v.dim)
                        p.fail("coordinate index out of range");
                    atom.up_coords.push_back(static_cast<size_t>(c - 1));
                }
                if (!std::is_sorted(atom.up_coords.begin(), atom.up_coords.end()) ||
                    std::adjacent_find(atom.up_coords.begin(), atom.up_coords.end()) !=
                        atom.up_coords.end())
                    p.fail("up coordinates must be sorted and distinct");
                p.expect("=");
                p.expect("(");
                for (size_t i = 0; i < atom.up_coords.size(); ++i) {
                    if (i)
                        p.expect(",");
                    std::string t = p.next("natural");
                    if (!is_nat_token(t))
                        p.fail("expected a natural");
                    atom.up_bounds.push_back(Nat::from_string(t));
                }
                p.expect(")");
                p.expect("down");
                p.expect("=");
                p.expect("(");
                for (size_t i = 0; i + atom.up_coords.size() < b.v.dim; ++i) {
                    if (i)
                        p.expect(",");
                    std::string t = p.next("natural or w");
                    if (t == "w")
                        atom.down_bounds.push_back(NatOmega::omega());
                    else if (is_nat_token(t))
                        atom.down_bounds.push_back(NatOmega(Nat::from_string(t)));
                    else
                        p.fail("expected a natural or 'w'");
                }
                p.expect(")");
                p.end();
                b.updown_atoms.push_back(std::move(atom));
            }
        } else if (head == "hole") {
            StateId q = b.state(p, p.next("state"));
            b.hole_atoms.push_back(DownAtom{q, b.omega_vec(p)});
            p.end();
        } else {
            p.fail("unknown directive '" + head + "'");
        }
    }

    if (!b.have_dim)
        throw ParseError(1, 1, "missing dim line");
    if (!b.have_init)
        throw ParseError(line_no ? line_no : 1, 1, "missing init line");

    Vass v = std::move(b.v);
    switch (b.acceptance_kind) {
    case 1:
        v.acceptance = DownSet(v.dim, v.state_count(), std::move(b.down_atoms));
        break;
    case 2:
        v.acceptance = UpdownAcceptance{std::move(b.updown_atoms)};
        break;
    case 3:
        v.acceptance = SingletonAcceptance{std::move(b.singleton)};
        break;
    default:
        v.acceptance = UpSet(v.dim, v.state_count(), std::move(b.up_atoms));
        break;
    }
    v.holes = DownSet(v.dim, v.state_count(), std::move(b.hole_atoms));
    try {
        v.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no ? line_no : 1, 1, e.what());
    }
    return v;
}

Vass parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

namespace {

std::string sanitize_token(const std::string& s) {
    std::string out;
    for (char c : s) {
        bool bad = std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
                   c == ',' || c == '[' || c == ']' || c == '=' || c == '#';
        out += bad ? '_' : c;
    }
    return out.empty() ? "_" : out;
}

std::vector<std::string> printable_names(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    std::unordered_set<std::string> used;
    for (const auto& n : names) {
        std::string base = sanitize_token(n);
        std::string cand = base;
        int suffix = 2;
        while (used.count(cand))
            cand = base + "_" + std::to_string(suffix++);
        used.insert(cand);
        out.push_back(cand);
    }
    return out;
}

std::string nat_vec_str(const NatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].to_string();
    return s + ")";
}

std::string omega_vec_str(const OmegaVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].to_string();
    return s + ")";
}

std::string eff_vec_str(const EffVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].to_string();
    return s + ")";
}

} // namespace

std::string print_model(const Vass& v) {
    std::vector<std::string> names = printable_names(v.states);
    std::ostringstream out;
    out << "vass " << sanitize_token(v.name) << "\n";
    out << "dim " << v.dim << "\n";
    out << "alphabet";
    for (const auto& s : v.alphabet)
        out << " " << sanitize_token(s);
    out << "\n";
    out << "states";
    for (const auto& s : names)
        out << " " << s;
    out << "\n";
    if (v.eps_allowed)
        out << "eps on\n";
    out << "init " << names[v.initial.state] << " " << nat_vec_str(v.initial.counters)
        << "\n";
    for (const auto& t : v.transitions) {
        out << "trans " << names[t.src] << " "
            << (t.label == EPSILON ? "eps" : sanitize_token(v.alphabet[t.label])) << " "
            << eff_vec_str(t.effect) << " " << names[t.dst] << "\n";
    }
    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        if (up->atoms().empty())
            out << "accept upward\n";
        for (const auto& a : up->atoms())
            out << "accept upward " << names[a.state] << " " << nat_vec_str(a.basis)
                << "\n";
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        if (down->atoms().empty())
            out << "accept downward\n";
        for (const auto& a : down->atoms())
            out << "accept downward " << names[a.state] << " " << omega_vec_str(a.bound)
                << "\n";
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        if (ud->atoms.empty())
            out << "accept updown\n";
        for (const auto& a : ud->atoms) {
            out << "accept updown " << names[a.state] << " up[";
            for (size_t i = 0; i < a.up_coords.size(); ++i)
                out << (i ? "," : "") << (a.up_coords[i] + 1);
            out << "]=(";
            for (size_t i = 0; i < a.up_bounds.size(); ++i)
                out << (i ? "," : "") << a.up_bounds[i].to_string();
            out << ") down=(";
            for (size_t i = 0; i < a.down_bounds.size(); ++i)
                out << (i ? "," : "") << a.down_bounds[i].to_string();
            out << ")\n";
        }
    } else {
        const auto& s = std::get<SingletonAcceptance>(v.acceptance);
        out << "accept singleton " << names[s.target.state] << " "
            << nat_vec_str(s.target.counters) << "\n";
    }
    for (const auto& h : v.holes.atoms())
        out << "hole " << names[h.state] << " " << omega_vec_str(h.bound) << "\n";
    return out.str();
}

MonoidFile parse_monoid(const std::string& text) {
    MonoidFile mf;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    size_t rows_read = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize_line(line);
        if (tokens.empty())
            continue;
        LineParser p(line_no, std::move(tokens));
        if (!have_header) {
            p.expect("monoid");
            std::string sz = p.next("size");
            std::string id = p.next("identity");
            if (!is_nat_token(sz) || !is_nat_token(id))
                p.fail("expected 'monoid SIZE IDENTITY'");
            mf.monoid.size = static_cast<size_t>(Nat::from_string(sz).to_uint64());
            mf.monoid.identity = static_cast<int>(Nat::from_string(id).to_uint64());
            mf.monoid.table.assign(mf.monoid.size * mf.monoid.size, 0);
            p.end();
            have_header = true;
        } else if (rows_read < mf.monoid.size) {
            for (size_t j = 0; j < mf.monoid.size; ++j) {
                std::string t = p.next("table entry");
                if (!is_nat_token(t))
                    p.fail("expected a table entry");
                mf.monoid.table[rows_read * mf.monoid.size + j] =
                    static_cast<int>(Nat::from_string(t).to_uint64());
            }
            p.end();
            ++rows_read;
        } else {
            p.expect("hom");
            std::string letter = p.next("letter");
            std::string idx = p.next("element index");
            if (!is_nat_token(idx))
                p.fail("expected an element index");
            mf.hom[letter] = static_cast<int>(Nat::from_string(idx).to_uint64());
            p.end();
        }
    }
    if (!have_header)
        throw ParseError(1, 1, "missing monoid header");
    if (rows_read < mf.monoid.size)
        throw ParseError(line_no ? line_no : 1, 1, "incomplete multiplication table");
    try {
        mf.monoid.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
    return mf;
}

MonoidFile parse_monoid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open monoid file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_monoid(ss.str());
}

Hom bind_hom(const MonoidFile& mf, const std::vector<std::string>& alphabet) {
    Hom h;
    for (const auto& s : alphabet) {
        auto it = mf.hom.find(s);
        if (it == mf.hom.end())
            throw std::runtime_error("monoid file lacks a hom entry for letter '" + s + "'");
        if (it->second < 0 || it->second >= static_cast<int>(mf.monoid.size))
            throw std::runtime_error("hom element out of range for letter '" + s + "'");
        h.letter.push_back(it->second);
    }
    return h;
}

Word parse_word(const Vass& v, const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        Symbol s = v.symbol(tok);
        if (s < 0)
            throw std::runtime_error("unknown symbol in word: '" + tok + "'");
        w.push_back(s);
    }
    return w;
}

std::string word_to_string(const Vass& v, const Word& w) {
    if (w.empty())
        return "eps";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += " ";
        out += w[i] == EPSILON ? "eps" : v.alphabet[w[i]];
    }
    return out;
}

} // namespace vass
