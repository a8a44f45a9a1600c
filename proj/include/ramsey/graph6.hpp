#ifndef RAMSEY_GRAPH6_HPP
#define RAMSEY_GRAPH6_HPP

/// \file graph6.hpp
/// \brief graph6 reader and writer, restricted to orders up to 64.

#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

class Graph6Error : public std::runtime_error {
public:
    Graph6Error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

inline std::string encode_graph6(const Graph& g)
{
    const int n = g.order();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    return out;
}

inline Graph decode_graph6(std::string_view text)
{
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.starts_with(">>graph6<<"))
        text.remove_prefix(10);
    if (text.empty())
        throw Graph6Error("empty graph6 line", 0);

    auto value = [&](std::size_t pos) {
        const int c = static_cast<unsigned char>(text[pos]);
        if (c < 63 || c > 126)
            throw Graph6Error("byte outside graph6 range", pos);
        return c - 63;
    };

    std::size_t pos = 0;
    long n = value(0);
    pos = 1;
    if (n == 63) {
        if (text.size() < 4)
            throw Graph6Error("truncated order header", text.size());
        if (value(1) == 63)
            throw Graph6Error("order beyond 258047 unsupported", 1);
        n = (static_cast<long>(value(1)) << 12) | (value(2) << 6) | value(3);
        pos = 4;
    }
    if (n > kMaxOrder)
        throw Graph6Error("order " + std::to_string(n) + " exceeds 64", 0);

    const long bits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() - pos != need)
        throw Graph6Error("expected " + std::to_string(need) + " data bytes, found " + std::to_string(text.size() - pos),
                          pos);

    Graph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            const std::size_t at = pos + static_cast<std::size_t>(k / 6);
            if ((value(at) >> (5 - k % 6)) & 1)
                g.add_edge(i, j);
        }
    }
    if (need > 0) {
        const int pad = static_cast<int>(need * 6 - static_cast<std::size_t>(bits));
        if (value(text.size() - 1) & ((1 << pad) - 1))
            throw Graph6Error("nonzero padding bits", text.size() - 1);
    }
    return g;
}

/// Reads one graph per line; blank lines are skipped.
inline std::vector<Graph> read_graph6_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<Graph> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        try {
            out.push_back(decode_graph6(line));
        } catch (const Graph6Error& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    for (const auto& g : graphs)
        out << encode_graph6(g) << '\n';
}

} // namespace ramsey

#endif // RAMSEY_GRAPH6_HPP
