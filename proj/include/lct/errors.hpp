#pragma once

#include <stdexcept>
#include <string>

namespace lct {

enum class Errc {
    syntax_error,
    semantic_error,
    degree_mismatch,
    multi_edge,
    bad_endpoint_count,
    unknown_vertex,
    k_out_of_range,
    not_a_forest,
    empty_subset,
    witness_not_in_subset,
    subset_is_full,
    set_is_greedy,
    max_subsets_exceeded,
    lcl_is_full,
    lcl_is_greedy,
    certificate_invalid,
    completion_failure,
    bad_parameter,
    empty_graph,
    delta_too_small,
    degree_too_high,
    invariant_breach,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::syntax_error: return "SyntaxError";
        case Errc::semantic_error: return "SemanticError";
        case Errc::degree_mismatch: return "DegreeMismatch";
        case Errc::multi_edge: return "MultiEdge";
        case Errc::bad_endpoint_count: return "BadEndpointCount";
        case Errc::unknown_vertex: return "UnknownVertex";
        case Errc::k_out_of_range: return "KOutOfRange";
        case Errc::not_a_forest: return "NotAForest";
        case Errc::empty_subset: return "EmptySubset";
        case Errc::witness_not_in_subset: return "WitnessNotInSubset";
        case Errc::subset_is_full: return "SubsetIsFull";
        case Errc::set_is_greedy: return "SetIsGreedy";
        case Errc::max_subsets_exceeded: return "MaxSubsetsExceeded";
        case Errc::lcl_is_full: return "LclIsFull";
        case Errc::lcl_is_greedy: return "LclIsGreedy";
        case Errc::certificate_invalid: return "CertificateInvalid";
        case Errc::completion_failure: return "CompletionFailure";
        case Errc::bad_parameter: return "BadParameter";
        case Errc::empty_graph: return "EmptyGraph";
        case Errc::delta_too_small: return "DeltaTooSmall";
        case Errc::degree_too_high: return "DegreeTooHigh";
        case Errc::invariant_breach: return "InvariantBreach";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline void check(bool ok, Errc code, const std::string& message) {
    if (!ok) fail(code, message);
}

} // namespace lct
