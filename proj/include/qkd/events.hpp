#pragma once

namespace qkd {

enum class Basis { Correct, Incorrect };

enum class OutcomeKind { NoDetection, Single, Double };

enum class Cause { RealCount, DarkCount };

enum class Bit { Correct, Error, None };

/// Terminal classification of one pulse. The four named subgroups carry
/// sifted-key bits; everything else (wrong basis, no click, double click,
/// truncation remainder) is Discard.
enum class Subgroup { ErrDark, BitDark, ErrReal, BitReal, Discard };

/// Subgroup of a sifted single-detection event. Shared by the analytic tree
/// and the pulse simulator so both classify identically.
constexpr Subgroup classify_single(Cause cause, bool bit_correct) {
    if (cause == Cause::DarkCount) {
        return bit_correct ? Subgroup::BitDark : Subgroup::ErrDark;
    }
    return bit_correct ? Subgroup::BitReal : Subgroup::ErrReal;
}

constexpr const char* to_string(Basis b) {
    return b == Basis::Correct ? "correct" : "incorrect";
}

constexpr const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::NoDetection: return "none";
        case OutcomeKind::Single: return "single";
        case OutcomeKind::Double: return "double";
    }
    return "?";
}

constexpr const char* to_string(Cause c) {
    return c == Cause::RealCount ? "real" : "dark";
}

constexpr const char* to_string(Bit b) {
    switch (b) {
        case Bit::Correct: return "correct";
        case Bit::Error: return "error";
        case Bit::None: return "-";
    }
    return "?";
}

constexpr const char* to_string(Subgroup s) {
    switch (s) {
        case Subgroup::ErrDark: return "err_dark";
        case Subgroup::BitDark: return "bit_dark";
        case Subgroup::ErrReal: return "err_real";
        case Subgroup::BitReal: return "bit_real";
        case Subgroup::Discard: return "discard";
    }
    return "?";
}

} // namespace qkd
