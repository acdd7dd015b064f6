#pragma once

#include <stdexcept>
#include <string>

namespace mvrcg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MVRCG_DEFINE_ERROR(Name)                    \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

// Malformed graph construction: self-loops, duplicate pairs, bad names.
MVRCG_DEFINE_ERROR(GraphError);
MVRCG_DEFINE_ERROR(NotChainGraph);
MVRCG_DEFINE_ERROR(OverlappingSets);
MVRCG_DEFINE_ERROR(NotAcyclic);
MVRCG_DEFINE_ERROR(NotChordal);
MVRCG_DEFINE_ERROR(DegenerateCovariance);
MVRCG_DEFINE_ERROR(InsufficientSamples);
MVRCG_DEFINE_ERROR(ParseError);
MVRCG_DEFINE_ERROR(InvalidCpt);
MVRCG_DEFINE_ERROR(CycleInDag);
MVRCG_DEFINE_ERROR(RetryExhausted);
MVRCG_DEFINE_ERROR(EmptyHypergraph);
MVRCG_DEFINE_ERROR(VertexMismatch);

#undef MVRCG_DEFINE_ERROR

}  // namespace mvrcg
