#include "nds/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nds/error.hpp"
#include "nds/independence.hpp"

namespace nds {

namespace {

enum class Tok { LBrack, RBrack, LParen, RParen, Comma, Word, End };

struct Token {
    Tok kind;
    std::string text;
};

class Reader {
public:
    Reader(std::string_view s, int line) : line_(line) {
        std::size_t i = 0;
        while (i < s.size()) {
            char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            Tok k = c == '[' ? Tok::LBrack : c == ']' ? Tok::RBrack : c == '(' ? Tok::LParen
                  : c == ')' ? Tok::RParen : c == ',' ? Tok::Comma : Tok::Word;
            if (k != Tok::Word) {
                toks_.push_back({k, std::string(1, c)});
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && std::string_view("[](),").find(s[j]) == std::string_view::npos)
                ++j;
            toks_.push_back({Tok::Word, std::string(s.substr(i, j - i))});
            i = j;
        }
        toks_.push_back({Tok::End, "end of line"});
    }

    [[nodiscard]] const Token& peek() const { return toks_[pos_]; }
    [[nodiscard]] bool at_end() const { return peek().kind == Tok::End; }
    [[nodiscard]] bool peek_word(std::string_view w) const { return peek().kind == Tok::Word && peek().text == w; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what + " near '" + peek().text + "'");
        next();
    }
    std::string word(const char* what) {
        if (peek().kind != Tok::Word) fail(std::string("expected ") + what + " near '" + peek().text + "'");
        return next().text;
    }
    Rational rational() {
        std::string w = word("a rational number");
        try {
            return parse_rational(w);
        } catch (const std::exception&) {
            fail("not a rational number: '" + w + "'");
        }
    }
    void finish() {
        if (!at_end()) fail("unexpected '" + peek().text + "'");
    }

    // name arg arg ... up to ',' ']' or a keyword
    Term term(const std::set<std::string>& stop = {}) {
        Term t{word("a name"), {}};
        while (peek().kind == Tok::Word && !stop.contains(peek().text)) t.args.push_back(rational());
        return t;
    }
    std::vector<Term> term_list() {
        expect(Tok::LBrack, "'['");
        std::vector<Term> out;
        if (peek().kind == Tok::RBrack) {
            next();
            return out;
        }
        while (true) {
            out.push_back(term());
            if (peek().kind == Tok::Comma) {
                next();
                continue;
            }
            expect(Tok::RBrack, "',' or ']'");
            return out;
        }
    }
    std::vector<Rational> tuple(std::size_t arity) {
        expect(Tok::LParen, "'('");
        std::vector<Rational> out;
        while (true) {
            out.push_back(rational());
            if (peek().kind == Tok::Comma) {
                next();
                continue;
            }
            expect(Tok::RParen, "',' or ')'");
            break;
        }
        if (out.size() != arity) fail("expected a tuple of " + std::to_string(arity) + " values");
        return out;
    }
    std::vector<std::vector<Rational>> tuple_list(std::size_t arity) {
        expect(Tok::LBrack, "'['");
        std::vector<std::vector<Rational>> out;
        if (peek().kind == Tok::RBrack) {
            next();
            return out;
        }
        while (true) {
            out.push_back(tuple(arity));
            if (peek().kind == Tok::Comma) {
                next();
                continue;
            }
            expect(Tok::RBrack, "',' or ']'");
            return out;
        }
    }
    std::vector<Rational> rational_list() {
        expect(Tok::LBrack, "'['");
        std::vector<Rational> out;
        if (peek().kind == Tok::RBrack) {
            next();
            return out;
        }
        while (true) {
            out.push_back(rational());
            if (peek().kind == Tok::Comma) {
                next();
                continue;
            }
            expect(Tok::RBrack, "',' or ']'");
            return out;
        }
    }
    TermSequence sequence() {
        TermSequence s;
        if (peek_word("prefix")) {
            next();
            s.prefix = term_list();
            if (!peek_word("tail")) fail("expected 'tail' after the prefix");
        }
        if (peek_word("tail")) {
            next();
            s.tail = term_list();
            if (s.tail.empty()) fail("the tail must not be empty");
            return s;
        }
        s.tail.push_back(term());
        return s;
    }

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct Arity {
    std::size_t min;
    std::size_t max;
    bool even = false;
};

const std::map<std::string, Arity, std::less<>> kMaps = {
    {"id", {0, 0}}, {"const", {1, 1}}, {"tent", {0, 0}}, {"doubling", {0, 0}}, {"affine", {2, 2}}, {"pwl", {4, 1000, true}},
};
const std::map<std::string, Arity, std::less<>> kPartitions = {
    {"trivial", {0, 0}}, {"uniform", {1, 1}}, {"cuts", {1, 1000}},
};

bool is_integer(const Rational& r) { return r.den() == 1; }

void check_term(const Reader& r, const Term& t, const std::map<std::string, Arity, std::less<>>& table,
                const char* what) {
    auto it = table.find(t.name);
    if (it == table.end()) r.fail(std::string("unknown ") + what + " '" + t.name + "'");
    const Arity& a = it->second;
    if (t.args.size() < a.min || t.args.size() > a.max || (a.even && t.args.size() % 2 != 0))
        r.fail(std::string("wrong number of arguments for ") + what + " '" + t.name + "'");
    if (t.name == "uniform" && (!is_integer(t.args[0]) || t.args[0].sign() <= 0))
        r.fail("uniform needs a positive integer cell count");
}

std::size_t parse_count(Reader& r) {
    std::string w = r.word("a nonnegative integer");
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) r.fail("not a nonnegative integer: '" + w + "'");
    return v;
}

bool parse_bool(Reader& r) {
    std::string w = r.word("true or false");
    if (w == "true") return true;
    if (w == "false") return false;
    r.fail("expected true or false, got '" + w + "'");
}

std::string term_str(const Term& t) {
    std::string s = t.name;
    for (const auto& a : t.args) s += " " + a.str();
    return s;
}

std::string list_str(const std::vector<Term>& ts) {
    std::string s = "[";
    for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + term_str(ts[i]);
    return s + "]";
}

std::string sequence_str(const TermSequence& s) {
    return "prefix " + list_str(s.prefix) + " tail " + list_str(s.tail);
}

template <class Row>
std::string tuples_str(const std::vector<Row>& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s += i ? ", (" : "(";
        for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? ", " : "") + rows[i][j].str();
        s += ")";
    }
    return s + "]";
}

Term density_term(Reader& r) {
    if (r.peek_word("pc")) {
        r.next();
        Term t{"pc", {}};
        for (auto& row : r.tuple_list(3)) t.args.insert(t.args.end(), row.begin(), row.end());
        return t;
    }
    Term t = r.term();
    if (t.name == "uniform" && t.args.empty()) return t;
    if (t.name == "staircase" && t.args.size() == 1 && is_integer(t.args[0]) && t.args[0].sign() > 0) return t;
    r.fail("density must be 'uniform', 'staircase k' or 'pc [(a, b, value), ...]'");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
        std::string key(s.substr(0, eq));
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::string_view value = s.substr(eq + 1);
        if (key.empty()) throw ParseError(line, "missing key before '='");
        if (!seen.insert(key).second) throw ParseError(line, "duplicate key '" + key + "'");
        Reader r(value, line);
        if (r.at_end()) throw ParseError(line, "missing value for '" + key + "'");

        if (key == "space") {
            std::string w = r.word("interval or circle");
            if (w == "interval") c.space = SpaceKind::Interval;
            else if (w == "circle") c.space = SpaceKind::Circle;
            else r.fail("space must be interval or circle, got '" + w + "'");
        } else if (key == "maps") {
            c.maps = r.sequence();
            for (const auto* part : {&c.maps.prefix, &c.maps.tail})
                for (const auto& t : *part) check_term(r, t, kMaps, "map");
        } else if (key == "lipschitz") {
            c.lipschitz = r.rational();
        } else if (key == "measure") {
            c.measure = {};
            if (r.peek_word("lebesgue")) {
                r.next();
            } else {
                c.measure.lebesgue = false;
                bool any = false;
                if (r.peek_word("pc")) {
                    r.next();
                    for (auto& row : r.tuple_list(3)) c.measure.pieces.push_back({row[0], row[1], row[2]});
                    any = true;
                }
                if (r.peek_word("atoms")) {
                    r.next();
                    for (auto& row : r.tuple_list(2)) c.measure.atoms.push_back({row[0], row[1]});
                    any = true;
                }
                if (!any) r.fail("measure must be 'lebesgue', 'pc [...]', 'atoms [...]' or both of the last two");
            }
        } else if (key == "partition") {
            c.partition = {};
            if (r.peek_word("independent") || r.peek_word("ex_id")) {
                Term g = r.term();
                if (g.args.size() != 1 || !is_integer(g.args[0]) || g.args[0].sign() <= 0)
                    r.fail("'" + g.name + "' needs one positive integer");
                c.partition.generator = g;
            } else {
                c.partition.explicit_terms = r.sequence();
                for (const auto* part : {&c.partition.explicit_terms.prefix, &c.partition.explicit_terms.tail})
                    for (const auto& t : *part) check_term(r, t, kPartitions, "partition");
            }
        } else if (key == "family") {
            c.family = r.term_list();
            for (const auto& t : c.family) check_term(r, t, kPartitions, "partition");
        } else if (key == "cover") {
            c.cover.clear();
            for (auto& row : r.tuple_list(2)) c.cover.emplace_back(row[0], row[1]);
        } else if (key == "horizon") {
            c.horizon = parse_count(r);
            if (c.horizon == 0) r.fail("horizon must be at least 1");
        } else if (key == "eps") {
            c.eps = r.peek().kind == Tok::LBrack ? r.rational_list() : std::vector<Rational>{r.rational()};
            if (c.eps.empty()) r.fail("eps must not be empty");
        } else if (key == "grid") {
            c.grid = r.rational();
        } else if (key == "log_base") {
            std::string w = r.word("e or 2");
            if (w == "e") c.base = LogBase::E;
            else if (w == "2") c.base = LogBase::Two;
            else r.fail("log_base must be e or 2");
        } else if (key == "window") {
            c.window = parse_count(r);
        } else if (key == "cap_cells") {
            c.cap_cells = parse_count(r);
        } else if (key == "k") {
            c.k = parse_count(r);
            if (c.k == 0) r.fail("k must be at least 1");
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(parse_count(r));
            if (c.threads == 0) r.fail("threads must be at least 1");
        } else if (key == "axiom_check") {
            c.axiom_check = parse_bool(r);
        } else if (key == "shift") {
            c.shift = parse_count(r);
            if (c.shift == 0) r.fail("shift must be at least 1");
        } else if (key == "certificate_eps") {
            c.certificate_eps = r.rational();
        } else if (key == "density") {
            c.density = density_term(r);
        } else if (key == "steps") {
            c.steps = parse_count(r);
        } else if (key == "out") {
            std::string v(value);
            while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
            c.out = v;
            continue;
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
        r.finish();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(0, "cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o << "space = " << (c.space == SpaceKind::Interval ? "interval" : "circle") << "\n";
    o << "maps = " << sequence_str(c.maps) << "\n";
    if (c.lipschitz) o << "lipschitz = " << c.lipschitz->str() << "\n";
    o << "measure = ";
    if (c.measure.lebesgue) {
        o << "lebesgue";
    } else {
        std::vector<std::vector<Rational>> pcs;
        for (const auto& p : c.measure.pieces) pcs.push_back({p.a, p.b, p.density});
        std::vector<std::vector<Rational>> ats;
        for (const auto& a : c.measure.atoms) ats.push_back({a.x, a.mass});
        o << "pc " << tuples_str(pcs) << " atoms " << tuples_str(ats);
    }
    o << "\n";
    o << "partition = ";
    if (c.partition.generator) o << term_str(*c.partition.generator);
    else o << sequence_str(c.partition.explicit_terms);
    o << "\n";
    if (!c.family.empty()) o << "family = " << list_str(c.family) << "\n";
    if (!c.cover.empty()) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& [a, b] : c.cover) rows.push_back({a, b});
        o << "cover = " << tuples_str(rows) << "\n";
    }
    o << "horizon = " << c.horizon << "\n";
    o << "eps = [";
    for (std::size_t i = 0; i < c.eps.size(); ++i) o << (i ? ", " : "") << c.eps[i].str();
    o << "]\n";
    o << "grid = " << c.grid.str() << "\n";
    o << "log_base = " << (c.base == LogBase::E ? "e" : "2") << "\n";
    o << "window = " << c.window << "\n";
    o << "cap_cells = " << c.cap_cells << "\n";
    o << "k = " << c.k << "\n";
    o << "threads = " << c.threads << "\n";
    o << "axiom_check = " << (c.axiom_check ? "true" : "false") << "\n";
    o << "shift = " << c.shift << "\n";
    o << "certificate_eps = " << c.certificate_eps.str() << "\n";
    o << "density = ";
    if (c.density.name == "pc") {
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i + 2 < c.density.args.size(); i += 3)
            rows.push_back({c.density.args[i], c.density.args[i + 1], c.density.args[i + 2]});
        o << "pc " << tuples_str(rows);
    } else {
        o << term_str(c.density);
    }
    o << "\n";
    o << "steps = " << c.steps << "\n";
    if (!c.out.empty()) o << "out = " << c.out << "\n";
    return o.str();
}

PiecewiseLinearMap build_map(SpaceKind space, const Term& t) {
    const auto& a = t.args;
    if (t.name == "id") return PiecewiseLinearMap::identity(space);
    if (t.name == "const") return PiecewiseLinearMap::constant(space, a.at(0));
    if (t.name == "tent") return PiecewiseLinearMap::tent(space);
    if (t.name == "doubling") return PiecewiseLinearMap::doubling(space);
    if (t.name == "affine") return PiecewiseLinearMap::affine(space, a.at(0), a.at(1));
    if (t.name == "pwl") {
        std::vector<std::pair<Rational, Rational>> pts;
        for (std::size_t i = 0; i + 1 < a.size(); i += 2) pts.emplace_back(a[i], a[i + 1]);
        return PiecewiseLinearMap::polyline(space, pts);
    }
    throw ArgumentError("unknown map '" + t.name + "'");
}

Partition build_partition(SpaceKind space, const Term& t) {
    if (t.name == "trivial") return Partition::trivial(space);
    if (t.name == "uniform") return Partition::uniform(space, t.args.at(0).num());
    if (t.name == "cuts") return Partition::from_cuts(space, t.args);
    throw ArgumentError("unknown partition '" + t.name + "'");
}

BuiltSystem build_system(const RunConfig& c, std::size_t horizon) {
    auto maps = [&](const std::vector<Term>& ts) {
        std::vector<PiecewiseLinearMap> out;
        for (const auto& t : ts) {
            try {
                out.push_back(build_map(c.space, t));
            } catch (const DomainError& e) {
                throw DomainError("map '" + term_str(t) + "' leaves the space: " + e.what());
            }
        }
        return out;
    };
    auto sys = SystemSequence::periodic(maps(c.maps.prefix), maps(c.maps.tail), c.lipschitz);
    auto mu1 = [&] {
        if (c.measure.lebesgue) return RationalMeasure::lebesgue(c.space);
        try {
            return RationalMeasure(c.space, c.measure.pieces, c.measure.atoms);
        } catch (const DomainError& e) {
            throw DomainError(std::string("measure is not a probability measure on the space: ") + e.what());
        }
    }();
    MeasureSequence mu(sys, mu1);
    if (auto bad = mu.check_invariance(horizon))
        throw CertificateError("invariance fails at n = " + std::to_string(*bad));
    return {sys, mu};
}

PartitionSequence build_partition_sequence(const RunConfig& c, const MeasureSequence& mu) {
    if (const auto& g = c.partition.generator) {
        std::int64_t k = g->args.at(0).num();
        if (g->name == "independent") return independent_refinement_sequence(mu, k, c.horizon + 1);
        // ex_id: P_n has k^n equal cells, so no cardinality bound exists
        SpaceKind space = c.space;
        std::size_t cap = c.cap_cells;
        return PartitionSequence::programmatic(space, "ex_id " + std::to_string(k), [space, k, cap](std::size_t n) {
            std::int64_t cells = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (cells > static_cast<std::int64_t>(cap) / k) throw ResourceError("ex_id partition exceeds the cell cap");
                cells *= k;
            }
            return Partition::uniform(space, cells);
        });
    }
    std::vector<Partition> prefix;
    std::vector<Partition> tail;
    for (const auto& t : c.partition.explicit_terms.prefix) prefix.push_back(build_partition(c.space, t));
    for (const auto& t : c.partition.explicit_terms.tail) tail.push_back(build_partition(c.space, t));
    return PartitionSequence::periodic(std::move(prefix), std::move(tail));
}

std::vector<PartitionSequence> build_family(const RunConfig& c, const MeasureSequence& mu) {
    if (c.family.empty()) return {build_partition_sequence(c, mu)};
    std::vector<PartitionSequence> out;
    for (const auto& t : c.family) out.push_back(PartitionSequence::constant(build_partition(c.space, t)));
    return out;
}

IntervalCover build_cover(const RunConfig& c) {
    if (c.cover.empty()) throw ArgumentError("no cover given");
    std::vector<IntervalSet> members;
    for (const auto& [a, b] : c.cover) members.push_back(open_arc(c.space, a, b));
    return IntervalCover(c.space, std::move(members));
}

Density build_density(const RunConfig& c) {
    const Term& t = c.density;
    if (t.name == "uniform") return Density::uniform(c.space);
    if (t.name == "staircase") return Density::staircase(c.space, t.args.at(0).num());
    std::vector<DensityPiece> pieces;
    for (std::size_t i = 0; i + 2 < t.args.size(); i += 3) pieces.push_back({t.args[i], t.args[i + 1], t.args[i + 2]});
    return Density(c.space, std::move(pieces));
}

}  // namespace nds
