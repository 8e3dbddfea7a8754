#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "mfc/framed_curve.hpp"

namespace mfc {

struct UnknownExample : Error {
    explicit UnknownExample(std::string_view name)
        : Error("unknown example '" + std::string(name) + "' (known: spacelike1, timelike1)") {}
};

/// Built-in curves used by the `example` subcommand and the test suites.
struct BuiltinExample {
    std::string_view name;
    CurveCharacter character;
    std::array<std::string_view, 3> gamma, nu1, nu2;
    double s_min, s_max;
    int samples;
};

inline const std::vector<BuiltinExample>& builtin_examples() {
    static const std::vector<BuiltinExample> examples = {
        {
            "spacelike1",
            CurveCharacter::Spacelike,
            {"s^3/3", "s^4/4+s^3/3", "s^5/5+s^3/3"},
            {"0",
             "(s^2+1)/sqrt((s^2+1)^2 + (s+1)^2)",
             "-(s+1)/sqrt((s^2+1)^2 + (s+1)^2)"},
            {"((s^2+1)^2 + (s+1)^2)/sqrt((s^4 + 3*s^2 + 2*s + 1)*((s^2+1)^2 + (s+1)^2))",
             "(s+1)/sqrt((s^4 + 3*s^2 + 2*s + 1)*((s^2+1)^2 + (s+1)^2))",
             "(s^2+1)/sqrt((s^4 + 3*s^2 + 2*s + 1)*((s^2+1)^2 + (s+1)^2))"},
            -1.0,
            1.0,
            201,
        },
        {
            "timelike1",
            CurveCharacter::Timelike,
            {"2*(s-3)*sinh(s) - 2*cosh(s)", "-2*(s-3)*cosh(s) + 2*sinh(s)", "s^2/2 - 3*s"},
            {"sinh(s)", "-cosh(s)", "0"},
            {"-cosh(s)/sqrt(3)", "sinh(s)/sqrt(3)", "-2/sqrt(3)"},
            -1.0,
            1.0,
            201,
        },
    };
    return examples;
}

inline const BuiltinExample& find_builtin(std::string_view name) {
    for (const auto& e : builtin_examples())
        if (e.name == name) return e;
    throw UnknownExample(name);
}

inline FramedCurveSpec to_framed_spec(const BuiltinExample& e) {
    FramedCurveSpec spec;
    spec.character = e.character;
    for (int i = 0; i < 3; ++i) {
        spec.gamma[i] = parse(e.gamma[i]);
        spec.nu1[i] = parse(e.nu1[i]);
        spec.nu2[i] = parse(e.nu2[i]);
    }
    spec.s_min = e.s_min;
    spec.s_max = e.s_max;
    return spec;
}

}  // namespace mfc
