#include "flowbeam/errors.hpp"

namespace flowbeam {

const char *toString(ParseErrorKind kind) noexcept
{
    switch (kind) {
    case ParseErrorKind::MalformedHeader:
        return "MalformedHeader";
    case ParseErrorKind::ShortMatrix:
        return "ShortMatrix";
    case ParseErrorKind::NonIntegerToken:
        return "NonIntegerToken";
    case ParseErrorKind::BadPairCount:
        return "BadPairCount";
    case ParseErrorKind::MachineIndexOutOfRange:
        return "MachineIndexOutOfRange";
    case ParseErrorKind::UnknownFormat:
        return "UnknownFormat";
    case ParseErrorKind::MalformedCsv:
        return "MalformedCsv";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, std::size_t block, const std::string &detail)
    : Error(std::string(toString(kind)) + " at byte " + std::to_string(offset) + " (block "
            + std::to_string(block) + "): " + detail),
      kind_(kind), offset_(offset), block_(block)
{
}

} // namespace flowbeam
