#pragma once

#include <stdexcept>
#include <string>

namespace mctp {

    // Malformed input data: bad coordinates, roles, parameters or files.
    class InvalidInstance : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // The instance (or a subproblem of it) admits no feasible covering.
    class InfeasibleInstance : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // A route refers to nodes outside V or is otherwise malformed.
    class StructuralError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    class SizeGuardError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // Merit evaluated for a node that covers nothing new.
    class NotACandidate : public std::invalid_argument {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A giant route too short to give every vehicle a node.
    class InfeasibleSplit : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // Every outer iteration of a heuristic failed.
    class NoSolution : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

}  // namespace mctp
