#include "prem/io.hpp"

#include "prem/errors.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace prem {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in)
{
    std::vector<Line> out;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        std::istringstream ss(text);
        Line line{number, {}};
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens[0][0] == '#') continue;
        out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what)
{
    throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

Rational rational_at(const std::string& origin, const Line& l, std::size_t i)
{
    try {
        return parse_rational(l.tokens.at(i));
    } catch (const std::exception& e) {
        fail(origin, l.number, e.what());
    }
}

QVec vector_from(const std::string& origin, const Line& l, std::size_t first)
{
    QVec v;
    for (std::size_t i = first; i < l.tokens.size(); ++i) v.push_back(rational_at(origin, l, i));
    return v;
}

int vertex_at(const std::string& origin, const Line& l, std::size_t i, const SimplicialComplex& c)
{
    if (i >= l.tokens.size()) fail(origin, l.number, "missing vertex id");
    auto v = c.vertex_index(l.tokens[i]);
    if (!v) fail(origin, l.number, "unknown vertex '" + l.tokens[i] + "'");
    return *v;
}

std::string join_vector(const QVec& v)
{
    std::string s;
    for (const auto& x : v) s += " " + format_rational(x);
    return s;
}

// Reads `v`/`s` lines from `lines`; other keywords are left to the caller.
SimplicialComplex complex_from_lines(const std::vector<Line>& lines, const std::string& origin, bool strict)
{
    RawComplex raw;
    std::map<std::string, int> index;
    std::vector<int> simplex_line;
    for (const auto& l : lines) {
        const std::string& kw = l.tokens[0];
        if (kw == "v") {
            if (l.tokens.size() != 2) fail(origin, l.number, "expected 'v <id>'");
            if (!index.emplace(l.tokens[1], static_cast<int>(raw.names.size())).second)
                fail(origin, l.number, "duplicate vertex '" + l.tokens[1] + "'");
            raw.names.push_back(l.tokens[1]);
        } else if (kw == "s") {
            if (l.tokens.size() < 2) fail(origin, l.number, "empty simplex");
            std::vector<int> vs;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                auto it = index.find(l.tokens[i]);
                if (it == index.end()) fail(origin, l.number, "undeclared vertex '" + l.tokens[i] + "'");
                vs.push_back(it->second);
            }
            std::set<int> uniq(vs.begin(), vs.end());
            if (uniq.size() != vs.size()) fail(origin, l.number, "repeated vertex in simplex");
            raw.simplices.push_back(Simplex(uniq.begin(), uniq.end()));
            simplex_line.push_back(l.number);
        } else if (strict) {
            fail(origin, l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (raw.names.empty()) throw ParseError(origin + ": no vertices declared");
    // Maximal simplices imply their faces, so only orphans and duplicates are errors here.
    std::set<Simplex> seen;
    for (std::size_t i = 0; i < raw.simplices.size(); ++i)
        if (!seen.insert(raw.simplices[i]).second) fail(origin, simplex_line[i], "duplicate simplex");
    std::vector<bool> used(raw.names.size(), false);
    for (const auto& s : raw.simplices)
        for (int v : s) used[v] = true;
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v]) raw.simplices.push_back({static_cast<int>(v)});
    return SimplicialComplex::from_simplices(raw.names, raw.simplices);
}

}  // namespace

SimplicialComplex parse_complex(std::istream& in, const std::string& origin)
{
    return complex_from_lines(tokenize(in), origin, true);
}

std::string write_complex(const SimplicialComplex& c)
{
    std::string out;
    for (const auto& n : c.names()) out += "v " + n + "\n";
    for (const auto& s : c.maximal_simplices()) {
        out += "s";
        for (int v : s) out += " " + c.name(v);
        out += "\n";
    }
    return out;
}

std::vector<QVec> parse_realization(std::istream& in, const SimplicialComplex& c, const std::string& origin)
{
    std::vector<std::optional<QVec>> coords(c.num_vertices());
    std::optional<std::size_t> dim;
    for (const auto& l : tokenize(in)) {
        if (l.tokens[0] != "c") fail(origin, l.number, "expected 'c <id> <num/den> ...'");
        int v = vertex_at(origin, l, 1, c);
        QVec x = vector_from(origin, l, 2);
        if (x.empty()) fail(origin, l.number, "missing coordinates");
        if (dim && *dim != x.size()) fail(origin, l.number, "inconsistent coordinate count");
        dim = x.size();
        if (coords[v]) fail(origin, l.number, "duplicate coordinates for '" + c.name(v) + "'");
        coords[v] = std::move(x);
    }
    std::vector<QVec> out;
    for (int v = 0; v < c.num_vertices(); ++v) {
        if (!coords[v]) throw ParseError(origin + ": no coordinates for vertex '" + c.name(v) + "'");
        out.push_back(*coords[v]);
    }
    return out;
}

std::string write_realization(const SimplicialComplex& c, const std::vector<QVec>& coords)
{
    std::string out;
    for (int v = 0; v < c.num_vertices(); ++v) out += "c " + c.name(v) + join_vector(coords[v]) + "\n";
    return out;
}

std::vector<int> parse_involution(std::istream& in, const SimplicialComplex& c, const std::string& origin)
{
    std::vector<int> t(c.num_vertices(), -1);
    for (const auto& l : tokenize(in)) {
        if (l.tokens[0] != "t" || l.tokens.size() != 3) fail(origin, l.number, "expected 't <id> <id>'");
        int a = vertex_at(origin, l, 1, c), b = vertex_at(origin, l, 2, c);
        if (t[a] != -1) fail(origin, l.number, "vertex '" + c.name(a) + "' assigned twice");
        t[a] = b;
    }
    for (int v = 0; v < c.num_vertices(); ++v)
        if (t[v] == -1) throw ParseError(origin + ": no image for vertex '" + c.name(v) + "'");
    return t;
}

std::string write_involution(const SimplicialComplex& c, const std::vector<int>& involution)
{
    std::string out;
    for (int v = 0; v < c.num_vertices(); ++v) out += "t " + c.name(v) + " " + c.name(involution[v]) + "\n";
    return out;
}

std::vector<QVec> parse_witness(std::istream& in, const DoublePointComplex& d, const std::string& origin)
{
    std::vector<std::optional<QVec>> alpha(d.pairs.size());
    for (const auto& l : tokenize(in)) {
        if (l.tokens[0] != "w") fail(origin, l.number, "expected 'w <pair-id> <num/den> ...'");
        int p = vertex_at(origin, l, 1, d.complex);
        if (alpha[p]) fail(origin, l.number, "duplicate witness entry");
        alpha[p] = vector_from(origin, l, 2);
    }
    std::vector<QVec> out;
    for (std::size_t p = 0; p < alpha.size(); ++p) {
        if (!alpha[p]) throw ParseError(origin + ": no witness value for pair '" + d.complex.name(static_cast<int>(p)) + "'");
        out.push_back(*alpha[p]);
    }
    return out;
}

std::string write_witness(const DoublePointComplex& d, const std::vector<QVec>& alpha)
{
    std::string out;
    for (std::size_t p = 0; p < alpha.size(); ++p)
        out += "w " + d.complex.name(static_cast<int>(p)) + join_vector(alpha[p]) + "\n";
    return out;
}

Lift parse_lift(std::istream& in, std::shared_ptr<const SimplicialComplex> k, const std::string& origin)
{
    const auto lines = tokenize(in);
    Lift g;
    std::optional<int> kk;
    std::vector<Line> structure, bary, values;
    for (const auto& l : lines) {
        const std::string& kw = l.tokens[0];
        if (kw == "k") {
            if (l.tokens.size() != 2 || kk) fail(origin, l.number, "expected a single 'k <k>'");
            try {
                kk = std::stoi(l.tokens[1]);
            } catch (const std::exception&) {
                fail(origin, l.number, "malformed k");
            }
            if (*kk < 1) fail(origin, l.number, "k must be positive");
        } else if (kw == "v" || kw == "s") {
            structure.push_back(l);
        } else if (kw == "b") {
            bary.push_back(l);
        } else if (kw == "g") {
            values.push_back(l);
        } else {
            fail(origin, l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!kk) throw ParseError(origin + ": missing 'k <k>'");
    g.k = *kk;
    if (structure.empty()) {
        if (!bary.empty()) fail(origin, bary[0].number, "'b' lines need a declared K*");
        g.record = identity_subdivision(k);
    } else {
        auto child = std::make_shared<const SimplicialComplex>(complex_from_lines(structure, origin, true));
        std::vector<std::optional<BaryPoint>> coords(child->num_vertices());
        for (const auto& l : bary) {
            int c = vertex_at(origin, l, 1, *child);
            if (coords[c]) fail(origin, l.number, "duplicate 'b' line");
            if (l.tokens.size() < 4 || l.tokens.size() % 2 != 0) fail(origin, l.number, "expected 'b <child> <parent> <num/den> ...'");
            std::map<int, Rational> acc;
            Rational total = 0;
            for (std::size_t i = 2; i < l.tokens.size(); i += 2) {
                int p = vertex_at(origin, l, i, *k);
                Rational w = rational_at(origin, l, i + 1);
                if (w <= 0) fail(origin, l.number, "barycentric weights must be positive");
                if (acc.count(p)) fail(origin, l.number, "repeated parent vertex");
                acc[p] = w;
                total += w;
            }
            if (total != 1) fail(origin, l.number, "barycentric weights must sum to 1");
            coords[c] = BaryPoint(acc.begin(), acc.end());
        }
        g.record.parent = k;
        g.record.child = child;
        for (int c = 0; c < child->num_vertices(); ++c) {
            if (!coords[c]) throw ParseError(origin + ": no 'b' line for K* vertex '" + child->name(c) + "'");
            g.record.vertex_coords.push_back(*coords[c]);
        }
        if (!g.record.sound()) throw ParseError(origin + ": K* is not a subdivision of K");
    }
    const SimplicialComplex& kstar = *g.record.child;
    std::vector<std::optional<QVec>> vals(kstar.num_vertices());
    for (const auto& l : values) {
        int v = vertex_at(origin, l, 1, kstar);
        if (vals[v]) fail(origin, l.number, "duplicate 'g' line");
        QVec x = vector_from(origin, l, 2);
        if (static_cast<int>(x.size()) != g.k) fail(origin, l.number, "expected " + std::to_string(g.k) + " coordinates");
        vals[v] = std::move(x);
    }
    for (int v = 0; v < kstar.num_vertices(); ++v) {
        if (!vals[v]) throw ParseError(origin + ": no 'g' line for vertex '" + kstar.name(v) + "'");
        g.values.push_back(*vals[v]);
    }
    return g;
}

std::string write_lift(const Lift& g)
{
    const SimplicialComplex& parent = *g.record.parent;
    const SimplicialComplex& child = *g.record.child;
    bool identity = child == parent;
    for (int v = 0; identity && v < child.num_vertices(); ++v)
        identity = g.record.vertex_coords[v] == bary_vertex(v);
    std::string out = "k " + std::to_string(g.k) + "\n";
    if (!identity) {
        out += write_complex(child);
        for (int v = 0; v < child.num_vertices(); ++v) {
            out += "b " + child.name(v);
            for (const auto& [p, w] : g.record.vertex_coords[v]) out += " " + parent.name(p) + " " + format_rational(w);
            out += "\n";
        }
    }
    for (int v = 0; v < child.num_vertices(); ++v) out += "g " + child.name(v) + join_vector(g.values[v]) + "\n";
    return out;
}

BoundaryData parse_boundary(std::istream& in, const SimplicialComplex& k, int dim, const std::string& origin)
{
    BoundaryData b;
    b.in_star.assign(k.num_vertices(), false);
    b.values.assign(k.num_vertices(), QVec(dim, Rational(0)));
    for (const auto& l : tokenize(in)) {
        if (l.tokens[0] != "e") fail(origin, l.number, "expected 'e <vertex> <num/den> ...'");
        int v = vertex_at(origin, l, 1, k);
        if (b.in_star[v]) fail(origin, l.number, "duplicate 'e' line");
        QVec x = vector_from(origin, l, 2);
        if (static_cast<int>(x.size()) != dim) fail(origin, l.number, "expected " + std::to_string(dim) + " coordinates");
        b.in_star[v] = true;
        b.values[v] = std::move(x);
    }
    return b;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

SimplicialComplex load_complex(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path));
    return parse_complex(in, path.string());
}

Lift load_lift(const std::filesystem::path& path, std::shared_ptr<const SimplicialComplex> k)
{
    std::istringstream in(read_file(path));
    return parse_lift(in, std::move(k), path.string());
}

MapBundle load_map(const std::filesystem::path& path)
{
    const std::string origin = path.string();
    std::istringstream in(read_file(path));
    const auto lines = tokenize(in);
    const auto dir = path.parent_path();
    std::optional<std::filesystem::path> src, tgt, real;
    MapBundle b;
    std::vector<Line> entries;
    for (const auto& l : lines) {
        const std::string& kw = l.tokens[0];
        auto single = [&](std::optional<std::filesystem::path>& slot) {
            if (l.tokens.size() != 2 || slot) fail(origin, l.number, "expected a single '" + kw + " <file>'");
            slot = dir / l.tokens[1];
        };
        if (kw == "source") single(src);
        else if (kw == "target") single(tgt);
        else if (kw == "realization") single(real);
        else if (kw == "meta") {
            if (l.tokens.size() != 3) fail(origin, l.number, "expected 'meta <key> <value>'");
            b.meta[l.tokens[1]] = l.tokens[2];
        } else if (kw == "m") {
            if (l.tokens.size() != 3) fail(origin, l.number, "expected 'm <src-id> <dst-id>'");
            entries.push_back(l);
        } else {
            fail(origin, l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!src || !tgt) throw ParseError(origin + ": map files need 'source' and 'target' lines");
    auto k = std::make_shared<const SimplicialComplex>(load_complex(*src));
    auto l = std::make_shared<const SimplicialComplex>(load_complex(*tgt));
    std::vector<int> vmap(k->num_vertices(), -1);
    for (const auto& e : entries) {
        int a = vertex_at(origin, e, 1, *k), t = vertex_at(origin, e, 2, *l);
        if (vmap[a] != -1) fail(origin, e.number, "vertex '" + k->name(a) + "' mapped twice");
        vmap[a] = t;
    }
    for (int v = 0; v < k->num_vertices(); ++v)
        if (vmap[v] == -1) throw ParseError(origin + ": no image for vertex '" + k->name(v) + "'");
    try {
        b.map = std::make_shared<const SimplicialMap>(k, l, vmap);
    } catch (const std::invalid_argument& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (real) {
        std::istringstream rin(read_file(*real));
        b.realization.emplace(l, parse_realization(rin, *l, real->string()));
    }
    return b;
}

std::string write_map(const SimplicialMap& f, const std::string& source_file, const std::string& target_file,
                      const std::optional<std::string>& realization_file, const std::map<std::string, std::string>& meta)
{
    std::string out = "source " + source_file + "\ntarget " + target_file + "\n";
    if (realization_file) out += "realization " + *realization_file + "\n";
    for (const auto& [key, value] : meta) out += "meta " + key + " " + value + "\n";
    for (int v = 0; v < f.source().num_vertices(); ++v)
        out += "m " + f.source().name(v) + " " + f.target().name(f(v)) + "\n";
    return out;
}

}  // namespace prem
