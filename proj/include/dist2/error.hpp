#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dist2 {

enum class Errc {
    AsymmetricAdjacency,
    LoopEdge,
    ParallelEdge,
    DanglingVertexId,
    EndpointNotOnFace,
    ChordAlreadyEdge,
    CrossingChords,
    ColorOutOfPalette,
    PaletteExhausted,
    DegreeTooHigh,
    PlanInvalid,
    NoSafeColor,
    TooLarge,
    Timeout,
    Infeasible,
    VertexSetMismatch,
    BadParams,
    BadHeader,
    TruncatedRecord,
    IndexOutOfRange,
    SchemaMismatch,
};

constexpr std::string_view errc_name(Errc e) noexcept
{
    switch (e) {
    case Errc::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::ParallelEdge: return "ParallelEdge";
    case Errc::DanglingVertexId: return "DanglingVertexId";
    case Errc::EndpointNotOnFace: return "EndpointNotOnFace";
    case Errc::ChordAlreadyEdge: return "ChordAlreadyEdge";
    case Errc::CrossingChords: return "CrossingChords";
    case Errc::ColorOutOfPalette: return "ColorOutOfPalette";
    case Errc::PaletteExhausted: return "PaletteExhausted";
    case Errc::DegreeTooHigh: return "DegreeTooHigh";
    case Errc::PlanInvalid: return "PlanInvalid";
    case Errc::NoSafeColor: return "NoSafeColor";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Timeout: return "Timeout";
    case Errc::Infeasible: return "Infeasible";
    case Errc::VertexSetMismatch: return "VertexSetMismatch";
    case Errc::BadParams: return "BadParams";
    case Errc::BadHeader: return "BadHeader";
    case Errc::TruncatedRecord: return "TruncatedRecord";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this type. `detail()`
/// carries the witness (offending dart, pair, JSON pointer, serialized graph).
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail)
        , code_(code)
        , detail_(std::move(detail))
    {
    }

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

} // namespace dist2
