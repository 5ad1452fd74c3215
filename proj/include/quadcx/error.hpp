#pragma once

#include <stdexcept>
#include <string>

namespace quadcx {

enum class Errc {
    ShapeMismatch = 1,
    NotAComplex,
    NoSolution,
    Singular,
    NotQis,
    PreconditionFailed,
    RankCondition,
    HomotopyIdentityFails,
    NoHomotopy,
    Mismatch,
    NotAcyclic,
    NotAnOrientation,
    SpaceMismatch,
    CostGuard,
    NotLipschitz,
    NotScalar,
    RangeError,
    NotInSubgroup,
    NotComposable,
    OddRank,
    IsotropyFailure,
    NotHomogeneous,
    NotMonotone,
    NotUnipotent,
    UnknownSuite,
    InvalidArgument,
    UnsupportedRing,
    SplitMismatch,
    HalfRankIsotropic,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace quadcx
