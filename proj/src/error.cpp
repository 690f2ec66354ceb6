#include "fqflow/error.hpp"

namespace fqflow {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::CompositeP: return "CompositeP";
        case ErrorCode::EvenP: return "EvenP";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::NegativeIndex: return "NegativeIndex";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::EmptyRoots: return "EmptyRoots";
        case ErrorCode::ZeroWeight: return "ZeroWeight";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::HasLoops: return "HasLoops";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::OddRankResidue: return "OddRankResidue";
        case ErrorCode::NonIntegerResult: return "NonIntegerResult";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace fqflow
