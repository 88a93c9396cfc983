#pragma once

// plantri's planar_code: a header, then per graph n and each vertex's
// clockwise neighbours (1-based), each list closed by 0. Graphs with
// n >= 256 are written as a 0 byte followed by 16-bit little-endian words.

#include "graph.hpp"

#include <cstdint>
#include <string_view>

namespace dist2 {

inline constexpr std::string_view planar_code_header = ">>planar_code<<";

namespace detail {

class CodeCursor {
public:
    CodeCursor(std::span<const std::uint8_t> bytes, std::size_t pos, bool wide, bool big_endian)
        : bytes_(bytes)
        , pos_(pos)
        , wide_(wide)
        , big_(big_endian)
    {
    }

    std::size_t next(std::size_t graph)
    {
        const std::size_t width = wide_ ? 2 : 1;
        if (pos_ + width > bytes_.size())
            throw Error(Errc::TruncatedRecord, "graph " + std::to_string(graph) + " ends at byte " +
                                                   std::to_string(bytes_.size()));
        std::size_t v = bytes_[pos_];
        if (wide_)
            v = big_ ? (v << 8 | bytes_[pos_ + 1]) : (v | std::size_t{bytes_[pos_ + 1]} << 8);
        pos_ += width;
        return v;
    }

    std::size_t position() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
    bool wide_;
    bool big_;
};

} // namespace detail

/// Accepts >>planar_code<<, >>planar_code le<< and >>planar_code be<<. Wide
/// records are little-endian unless the header says be.
inline std::vector<EmbeddedGraph> read_planar_code(std::span<const std::uint8_t> bytes)
{
    auto starts = [&](std::string_view h) {
        return bytes.size() >= h.size() && std::equal(h.begin(), h.end(), bytes.begin());
    };
    std::size_t pos = 0;
    bool big = false;
    if (starts(planar_code_header))
        pos = planar_code_header.size();
    else if (starts(">>planar_code le<<"))
        pos = 18;
    else if (starts(">>planar_code be<<")) {
        pos = 18;
        big = true;
    } else
        throw Error(Errc::BadHeader, "input does not start with " + std::string(planar_code_header));

    std::vector<EmbeddedGraph> out;
    while (pos < bytes.size()) {
        const auto index = out.size();
        bool wide = bytes[pos] == 0;
        if (wide)
            ++pos;
        detail::CodeCursor cur(bytes, pos, wide, big);
        const auto n = cur.next(index);
        std::vector<std::vector<Vertex>> rot(n);
        for (std::size_t v = 0; v < n; ++v) {
            while (true) {
                auto w = cur.next(index);
                if (w == 0)
                    break;
                if (w > n)
                    throw Error(Errc::IndexOutOfRange, "graph " + std::to_string(index) + ": vertex " +
                                                           std::to_string(v + 1) + " lists neighbour " +
                                                           std::to_string(w) + " of " + std::to_string(n));
                rot[v].push_back(static_cast<Vertex>(w - 1));
            }
        }
        out.push_back(build_embedded(n, std::move(rot)));
        pos = cur.position();
    }
    return out;
}

inline std::vector<EmbeddedGraph> read_planar_code(std::string_view bytes)
{
    return read_planar_code(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

inline std::vector<std::uint8_t> write_planar_code(std::span<const EmbeddedGraph> graphs)
{
    std::vector<std::uint8_t> out(planar_code_header.begin(), planar_code_header.end());
    for (const auto& g : graphs) {
        const auto n = g.vertex_count();
        if (n > 0xffff)
            throw Error(Errc::TooLarge, std::to_string(n) + " vertices do not fit planar_code");
        const bool wide = n >= 256 || n == 0;
        auto put = [&](std::size_t x) {
            if (wide) {
                out.push_back(static_cast<std::uint8_t>(x & 0xff));
                out.push_back(static_cast<std::uint8_t>(x >> 8));
            } else {
                out.push_back(static_cast<std::uint8_t>(x));
            }
        };
        if (wide)
            out.push_back(0);
        put(n);
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
            for (Vertex w : g.rotation(v))
                put(static_cast<std::size_t>(w) + 1);
            put(0);
        }
    }
    return out;
}

inline std::vector<std::uint8_t> write_planar_code(const EmbeddedGraph& g)
{
    return write_planar_code(std::span(&g, 1));
}

} // namespace dist2
