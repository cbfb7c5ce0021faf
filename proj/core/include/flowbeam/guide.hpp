#ifndef FLOWBEAM_GUIDE_HPP
#define FLOWBEAM_GUIDE_HPP

#include <cstddef>
#include <optional>
#include <string_view>

namespace flowbeam {

/// Node-ranking functions.
///  - G1: bound (makespan) or partial flowtime.
///  - G2: total idle time.
///  - G3: bound and idle time, mixed by the scheduled fraction.
///  - G4: bound and weighted idle time.
enum class GuideKind { G1, G2, G3, G4 };

const char *toString(GuideKind kind) noexcept;
std::optional<GuideKind> parseGuideKind(std::string_view text) noexcept;

struct GuideConfig {
    /// Factor applied to the idle term of G3. Unset means 1/m.
    std::optional<double> idleScale;

    [[nodiscard]] double idleScaleFor(std::size_t machines) const noexcept
    {
        return idleScale ? *idleScale : 1.0 / static_cast<double>(machines);
    }
};

} // namespace flowbeam

#endif // FLOWBEAM_GUIDE_HPP
