#include "hck/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hck {

namespace {

// Splits on LF; a single trailing LF does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_int(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

// Parses "key=value" into value.
bool keyed(std::string_view tok, std::string_view key, std::string_view& value) {
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
        return false;
    value = tok.substr(key.size() + 1);
    return true;
}

template <class T>
T header_int(std::string_view tok, std::string_view key) {
    std::string_view v;
    T out{};
    if (!keyed(tok, key, v) || !parse_int(v, out))
        throw ParseError(ParseErrc::malformed_header, 1, "expected " + std::string(key) + "=<int>");
    return out;
}

void check_version(const std::vector<std::string_view>& tok, std::string_view magic,
                   std::size_t count) {
    if (tok.size() != count || tok[0] != magic || tok[1] != "1")
        throw ParseError(ParseErrc::malformed_header, 1,
                         "expected '" + std::string(magic) + " 1 ...' header");
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(ParseErrc::malformed_header, 1, "empty input");
    const auto head = split_ws(lines[0]);
    check_version(head, "HG", 5);
    const auto n = header_int<std::size_t>(head[2], "n");
    std::string_view sz;
    if (!keyed(head[3], "sizes", sz))
        throw ParseError(ParseErrc::malformed_header, 1, "expected sizes=<list>");
    std::vector<std::size_t> sizes;
    while (!sz.empty()) {
        auto comma = sz.find(',');
        std::size_t s = 0;
        if (!parse_int(sz.substr(0, comma), s) || s < 2)
            throw ParseError(ParseErrc::malformed_header, 1, "bad size list");
        sizes.push_back(s);
        sz = comma == std::string_view::npos ? std::string_view{} : sz.substr(comma + 1);
    }
    const auto weighted = header_int<int>(head[4], "weighted");
    if (weighted != 0 && weighted != 1)
        throw ParseError(ParseErrc::malformed_header, 1, "weighted must be 0 or 1");

    Hypergraph g(n, sizes, weighted == 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        auto tok = split_ws(lines[li]);
        if (tok.empty() || tok[0] != "e") throw ParseError(ParseErrc::malformed_line, line_no, "expected 'e ...'");
        std::optional<Weight> w;
        std::string_view wv;
        if (tok.size() > 1 && keyed(tok.back(), "w", wv)) {
            Weight x = 0;
            if (!parse_int(wv, x)) throw ParseError(ParseErrc::malformed_line, line_no, "bad weight");
            w = x;
            tok.pop_back();
        }
        if (w.has_value() != g.weighted())
            throw ParseError(ParseErrc::weight_mismatch, line_no,
                             g.weighted() ? "missing weight" : "weight on unweighted graph");
        Edge e;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            std::uint64_t v = 0;
            if (!parse_int(tok[i], v)) throw ParseError(ParseErrc::malformed_line, line_no, "bad vertex id");
            if (v >= n) throw ParseError(ParseErrc::vertex_out_of_range, line_no, "vertex out of range");
            if (!e.empty() && e.back() >= v)
                throw ParseError(ParseErrc::unsorted_edge, line_no, "vertices must be strictly increasing");
            e.push_back(static_cast<Vertex>(v));
        }
        if (!g.allows_size(e.size()))
            throw ParseError(ParseErrc::size_not_in_profile, line_no, "edge size not in profile");
        if (g.has_edge(e)) throw ParseError(ParseErrc::duplicate_edge, line_no, "duplicate edge");
        g.add_edge(std::move(e), w.value_or(0));
    }
    return g;
}

std::string serialize(const Hypergraph& g) {
    std::ostringstream os;
    os << "HG 1 n=" << g.n() << " sizes=";
    for (std::size_t i = 0; i < g.sizes().size(); ++i) os << (i ? "," : "") << g.sizes()[i];
    os << " weighted=" << (g.weighted() ? 1 : 0) << '\n';
    // Sorted order so equal graphs serialize identically.
    std::vector<std::size_t> order(g.edge_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return g.edge(a) < g.edge(b); });
    for (auto i : order) {
        os << 'e';
        for (Vertex v : g.edge(i)) os << ' ' << v;
        if (g.weighted()) os << " w=" << g.weight_at(i);
        os << '\n';
    }
    return os.str();
}

CircleLayout parse_partition(std::string_view text, std::size_t n) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(ParseErrc::malformed_header, 1, "empty input");
    const auto head = split_ws(lines[0]);
    check_version(head, "PART", 3);
    CircleLayout l;
    l.k = header_int<std::size_t>(head[2], "k");
    if (l.k == 0 || l.k > 32) throw ParseError(ParseErrc::malformed_header, 1, "k must be in [1, 32]");
    std::vector<bool> seen(n, false);
    l.part_of.assign(n, 0);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto tok = split_ws(lines[li]);
        std::uint64_t v = 0, p = 0;
        if (tok.size() != 3 || tok[0] != "p" || !parse_int(tok[1], v) || !parse_int(tok[2], p))
            throw ParseError(ParseErrc::malformed_line, line_no, "expected 'p <vertex> <partition>'");
        if (v >= n || p >= l.k) throw ParseError(ParseErrc::vertex_out_of_range, line_no, "index out of range");
        if (seen[v]) throw ParseError(ParseErrc::malformed_line, line_no, "vertex assigned twice");
        seen[v] = true;
        l.part_of[v] = p;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ParseError(ParseErrc::malformed_line, lines.size(), "vertex without partition");
    return l;
}

std::string serialize(const CircleLayout& layout) {
    std::ostringstream os;
    os << "PART 1 k=" << layout.k << '\n';
    for (std::size_t v = 0; v < layout.part_of.size(); ++v) os << "p " << v << ' ' << layout.part_of[v] << '\n';
    return os.str();
}

PatternGraph parse_pattern(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(ParseErrc::malformed_header, 1, "empty input");
    const auto head = split_ws(lines[0]);
    check_version(head, "PAT", 3);
    const auto k = header_int<std::size_t>(head[2], "k");
    if (k == 0 || k > kMaxPatternK) throw ParseError(ParseErrc::malformed_header, 1, "k must be in [1, 8]");
    std::vector<Mask> masks;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto tok = split_ws(lines[li]);
        if (tok.empty() || tok[0] != "e") throw ParseError(ParseErrc::malformed_line, line_no, "expected 'e ...'");
        Mask m = 0;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            std::size_t v = 0;
            if (!parse_int(tok[i], v)) throw ParseError(ParseErrc::malformed_line, line_no, "bad vertex id");
            if (v >= k) throw ParseError(ParseErrc::vertex_out_of_range, line_no, "vertex out of range");
            if (m & (1u << v)) throw ParseError(ParseErrc::malformed_line, line_no, "repeated vertex");
            m |= 1u << v;
        }
        if (popcount(m) < 2) throw ParseError(ParseErrc::size_not_in_profile, line_no, "edges need 2+ vertices");
        if (std::find(masks.begin(), masks.end(), m) != masks.end())
            throw ParseError(ParseErrc::duplicate_edge, line_no, "duplicate edge");
        masks.push_back(m);
    }
    return PatternGraph::from_masks(k, std::move(masks));
}

std::string serialize(const PatternGraph& h) {
    std::ostringstream os;
    os << "PAT 1 k=" << h.k() << '\n';
    for (Mask m : h.edges()) {
        os << 'e';
        for (std::size_t v = 0; v < h.k(); ++v)
            if (m & (1u << v)) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace hck
