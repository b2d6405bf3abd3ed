#pragma once

#include <stdexcept>
#include <string>

namespace loopline {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Presentation-file errors carry a location.
struct SyntaxError : Error {
    int line, column;
    SyntaxError(const std::string& msg, int line_, int column_)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

struct DanglingCrossing : Error { using Error::Error; };
struct UnknownCrossing : Error { using Error::Error; };
struct IllegalMove : Error { using Error::Error; };
struct NotSpecial : Error { using Error::Error; };

struct NotUnimodular : Error { using Error::Error; };
struct NotSymmetrizable : Error { using Error::Error; };
struct NotIntegrable : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct SingularAtOne : Error { using Error::Error; };
struct NotInZ1 : Error { using Error::Error; };

struct NotUnital : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct MalformedR : Error { using Error::Error; };

} // namespace loopline
