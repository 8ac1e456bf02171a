#include "recolor/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace recolor {

namespace {

std::vector<Edge> normalized_edges(std::vector<Edge> edges) {
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    return edges;
}

void write_edges(std::ostringstream& os, const std::vector<Edge>& edges) {
    os << "edges " << edges.size() << "\n";
    for (const auto& [u, v] : normalized_edges(edges)) os << u << " " << v << "\n";
}

void write_trace(std::ostringstream& os, const ReductionTrace& trace) {
    os << "trace " << trace.records.size() << "\n";
    for (const auto& [label, ids] : trace.records) {
        os << label;
        for (int id : ids) os << " " << id;
        os << "\n";
    }
}

} // namespace

std::string kind_of(const InstanceFile& file) {
    if (std::holds_alternative<RepairFile>(file)) return "repair";
    if (std::holds_alternative<PrExtInstance>(file)) return "prext";
    if (std::holds_alternative<IndSetInstance>(file)) return "indset";
    return "cnf3batch";
}

std::string save_to_string(const InstanceFile& file) {
    std::ostringstream os;
    os << "recolor " << kFormatVersion << "\n";
    os << "kind " << kind_of(file) << "\n";
    if (const auto* rf = std::get_if<RepairFile>(&file)) {
        const auto& g = rf->instance.graph;
        os << "n " << g.n() << "\n";
        os << "r " << g.r() << "\n";
        os << "k " << rf->instance.budget << "\n";
        os << "variant " << to_string(rf->instance.variant) << "\n";
        os << "promise " << (rf->instance.promise ? 1 : 0) << "\n";
        os << "adjacent_only " << (rf->instance.adjacent_only ? 1 : 0) << "\n";
        os << "coloring";
        for (int v = 0; v < g.n(); ++v) os << " " << g.color(v);
        os << "\n";
        write_edges(os, g.edges());
        if (rf->trace) write_trace(os, *rf->trace);
    } else if (const auto* pe = std::get_if<PrExtInstance>(&file)) {
        os << "n " << pe->n << "\n";
        os << "r " << pe->r << "\n";
        write_edges(os, pe->edges);
        auto w = pe->precolored_set();
        os << "precolored " << w.size() << "\n";
        for (int v : w) os << v << " " << pe->precoloring[v] << "\n";
    } else if (const auto* is = std::get_if<IndSetInstance>(&file)) {
        os << "n " << is->n << "\n";
        os << "k " << is->k << "\n";
        write_edges(os, is->edges);
    } else {
        const auto& batch = std::get<Cnf3Batch>(file);
        os << "t " << batch.t() << "\n";
        os << "vars " << batch.formulas.at(0).num_vars << "\n";
        os << "clauses " << batch.formulas.at(0).clauses.size() << "\n";
        for (int h = 0; h < batch.t(); ++h) {
            os << "formula " << h << "\n";
            for (const auto& clause : batch.formulas[h].clauses) {
                for (size_t i = 0; i < clause.size(); ++i)
                    os << (i ? " " : "") << clause[i];
                os << "\n";
            }
        }
    }
    os << "end\n";
    return os.str();
}

void save(const InstanceFile& file, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << save_to_string(file);
    if (!out) throw Error("write to " + path + " failed");
}

namespace {

struct LineReader {
    std::istringstream stream;
    std::string origin;
    int line_number = 0;
    std::string current;

    LineReader(const std::string& text, std::string from)
        : stream(text), origin(std::move(from)) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(origin + ":" + std::to_string(line_number) + ": " + message);
    }

    bool next() {
        while (std::getline(stream, current)) {
            ++line_number;
            if (!current.empty() && current.back() == '\r') current.pop_back();
            if (current.empty() || current[0] == '#') continue;
            return true;
        }
        return false;
    }

    std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        std::istringstream ts(current);
        std::string tok;
        while (ts >> tok) out.push_back(tok);
        return out;
    }

    int to_int(const std::string& tok) const {
        try {
            size_t used = 0;
            int value = std::stoi(tok, &used);
            if (used != tok.size()) fail("not an integer: '" + tok + "'");
            return value;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("not an integer: '" + tok + "'");
        }
    }

    // key-value line: "key <int>"
    int expect_int(const std::string& key) {
        if (!next()) fail("expected '" + key + "', got end of file");
        auto toks = tokens();
        if (toks.size() != 2 || toks[0] != key)
            fail("expected '" + key + " <int>', got '" + current + "'");
        return to_int(toks[1]);
    }

    std::string expect_word(const std::string& key) {
        if (!next()) fail("expected '" + key + "', got end of file");
        auto toks = tokens();
        if (toks.size() != 2 || toks[0] != key)
            fail("expected '" + key + " <word>', got '" + current + "'");
        return toks[1];
    }
};

std::vector<Edge> read_edges(LineReader& in) {
    int count = in.expect_int("edges");
    if (count < 0) in.fail("edge count must be nonnegative");
    std::vector<Edge> edges;
    edges.reserve(count);
    for (int i = 0; i < count; ++i) {
        if (!in.next()) in.fail("expected an edge line");
        auto toks = in.tokens();
        if (toks.size() != 2) in.fail("expected 'u v', got '" + in.current + "'");
        edges.emplace_back(in.to_int(toks[0]), in.to_int(toks[1]));
    }
    return edges;
}

void read_end(LineReader& in) {
    if (!in.next() || in.current != "end") in.fail("expected 'end'");
}

} // namespace

InstanceFile load_from_string(const std::string& text, const std::string& origin) {
    LineReader in(text, origin);
    if (!in.next()) in.fail("empty file");
    {
        auto toks = in.tokens();
        if (toks.size() != 2 || toks[0] != "recolor")
            in.fail("expected header 'recolor <version>'");
        int version = in.to_int(toks[1]);
        if (version != kFormatVersion)
            in.fail("unsupported format version " + std::to_string(version));
    }
    std::string kind = in.expect_word("kind");

    if (kind == "repair") {
        int n = in.expect_int("n");
        int r = in.expect_int("r");
        int k = in.expect_int("k");
        Variant variant = variant_from_string(in.expect_word("variant"));
        bool promise = in.expect_int("promise") != 0;
        bool adjacent_only = in.expect_int("adjacent_only") != 0;
        if (!in.next()) in.fail("expected 'coloring'");
        auto toks = in.tokens();
        if (toks.empty() || toks[0] != "coloring") in.fail("expected 'coloring ...'");
        if (static_cast<int>(toks.size()) != n + 1)
            in.fail("coloring must list exactly " + std::to_string(n) + " colors");
        std::vector<int> colors;
        for (size_t i = 1; i < toks.size(); ++i) colors.push_back(in.to_int(toks[i]));
        auto edges = read_edges(in);

        RepairFile rf;
        rf.instance.graph = ColoredGraph(n, r, std::move(edges), std::move(colors));
        rf.instance.budget = k;
        rf.instance.variant = variant;
        rf.instance.promise = promise;
        rf.instance.adjacent_only = adjacent_only;
        rf.instance.validate();

        if (!in.next()) in.fail("expected 'trace' or 'end'");
        if (in.current != "end") {
            auto head = in.tokens();
            if (head.size() != 2 || head[0] != "trace") in.fail("expected 'trace <count>' or 'end'");
            int count = in.to_int(head[1]);
            ReductionTrace trace;
            for (int i = 0; i < count; ++i) {
                if (!in.next()) in.fail("expected a trace record");
                auto rec = in.tokens();
                std::vector<int> ids;
                for (size_t j = 1; j < rec.size(); ++j) ids.push_back(in.to_int(rec[j]));
                trace.add(rec[0], std::move(ids));
            }
            check_trace_covers(trace, n);
            rf.trace = std::move(trace);
            read_end(in);
        }
        return rf;
    }
    if (kind == "prext") {
        PrExtInstance src;
        src.n = in.expect_int("n");
        src.r = in.expect_int("r");
        src.edges = read_edges(in);
        src.precoloring.assign(src.n, PrExtInstance::kUncolored);
        int count = in.expect_int("precolored");
        for (int i = 0; i < count; ++i) {
            if (!in.next()) in.fail("expected 'vertex color'");
            auto toks = in.tokens();
            if (toks.size() != 2) in.fail("expected 'vertex color', got '" + in.current + "'");
            int v = in.to_int(toks[0]);
            if (v < 0 || v >= src.n) in.fail("precolored vertex out of range");
            src.precoloring[v] = in.to_int(toks[1]);
        }
        read_end(in);
        src.validate();
        return src;
    }
    if (kind == "indset") {
        IndSetInstance src;
        src.n = in.expect_int("n");
        src.k = in.expect_int("k");
        src.edges = read_edges(in);
        read_end(in);
        src.validate();
        return src;
    }
    if (kind == "cnf3batch") {
        int t = in.expect_int("t");
        int vars = in.expect_int("vars");
        int clauses = in.expect_int("clauses");
        Cnf3Batch batch;
        for (int h = 0; h < t; ++h) {
            int index = in.expect_int("formula");
            if (index != h) in.fail("formula blocks must appear in order");
            Cnf3Formula f;
            f.num_vars = vars;
            for (int j = 0; j < clauses; ++j) {
                if (!in.next()) in.fail("expected a clause line");
                Clause clause;
                for (const auto& tok : in.tokens()) clause.push_back(in.to_int(tok));
                f.clauses.push_back(std::move(clause));
            }
            batch.formulas.push_back(std::move(f));
        }
        read_end(in);
        batch.validate();
        return batch;
    }
    in.fail("unknown kind '" + kind + "'");
}

InstanceFile load(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return load_from_string(buffer.str(), path);
}

std::string certificate_to_string(const Certificate& cert) {
    std::string out;
    for (const Move& move : cert.moves) {
        out += to_string(move);
        out += "\n";
    }
    return out;
}

Certificate certificate_from_string(const std::string& text) {
    Certificate cert;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        int a = 0;
        int b = 0;
        if (!(ls >> kind >> a >> b) || (kind != "R" && kind != "S"))
            throw ParseError("certificate:" + std::to_string(line_number) +
                             ": expected 'R v c' or 'S u v'");
        if (kind == "R")
            cert.moves.push_back(RecolorMove{a, b});
        else
            cert.moves.push_back(SwapMove{a, b});
    }
    return cert;
}

std::string to_dimacs(const ColoredGraph& g) {
    std::ostringstream os;
    os << "p edge " << g.n() << " " << g.m() << "\n";
    for (const auto& [u, v] : g.edges()) os << "e " << u + 1 << " " << v + 1 << "\n";
    return os.str();
}

} // namespace recolor
