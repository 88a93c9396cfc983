#pragma once

// Loading and saving graph files in either format.

#include "json_io.hpp"
#include "planar_code.hpp"

#include <filesystem>
#include <fstream>

namespace dist2 {

enum class GraphFormat { Auto, PlanarCode, Json };

inline GraphFormat parse_format(std::string_view s)
{
    if (s.empty() || s == "auto")
        return GraphFormat::Auto;
    if (s == "planarcode" || s == "planar_code")
        return GraphFormat::PlanarCode;
    if (s == "json")
        return GraphFormat::Json;
    throw Error(Errc::BadParams, "unknown format '" + std::string(s) + "'");
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::BadParams, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::string_view data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::BadParams, "cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

/// A JSON file holds one graph document or an array of them.
inline std::vector<EmbeddedGraph> parse_graphs(std::string_view data, GraphFormat format = GraphFormat::Auto)
{
    if (format == GraphFormat::Auto)
        format = data.starts_with(">>planar_code") ? GraphFormat::PlanarCode : GraphFormat::Json;
    if (format == GraphFormat::PlanarCode)
        return read_planar_code(data);
    auto doc = parse_json_text(data);
    std::vector<EmbeddedGraph> out;
    if (doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            try {
                out.push_back(graph_from_json(doc[i]));
            } catch (const Error& e) {
                if (e.code() != Errc::SchemaMismatch)
                    throw;
                throw Error(Errc::SchemaMismatch, "/" + std::to_string(i) + e.detail());
            }
        }
    } else {
        out.push_back(graph_from_json(doc));
    }
    return out;
}

inline std::vector<EmbeddedGraph> load_graphs(const std::filesystem::path& path, GraphFormat format = GraphFormat::Auto)
{
    if (format == GraphFormat::Auto && path.extension() == ".json")
        format = GraphFormat::Json;
    return parse_graphs(read_file(path), format);
}

/// Planar code unless the format or a .json extension says otherwise.
inline void save_graphs(const std::filesystem::path& path, std::span<const EmbeddedGraph> graphs,
                        GraphFormat format = GraphFormat::Auto)
{
    if (format == GraphFormat::Auto)
        format = path.extension() == ".json" ? GraphFormat::Json : GraphFormat::PlanarCode;
    if (format == GraphFormat::PlanarCode) {
        auto bytes = write_planar_code(graphs);
        write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
        return;
    }
    json doc;
    if (graphs.size() == 1) {
        doc = to_json(graphs[0]);
    } else {
        doc = json::array();
        for (const auto& g : graphs)
            doc.push_back(to_json(g));
    }
    write_file(path, doc.dump(1) + "\n");
}

} // namespace dist2
