#pragma once

// Multisegment labels for the irreducible representations inside a block.
// Unramified characters are opaque lines with an integer lattice of nu-shifts;
// a segment (line, k, a) denotes (chi nu^k, ..., chi nu^{k+a-1}). No scalar
// values are stored: every transfer the theory uses acts through this lattice.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blockdual/errors.hpp"

namespace blockdual {

struct Segment {
    std::string line;          // opaque unramified-character symbol, compared by identity
    std::int64_t offset = 0;   // power of nu at the left end
    std::int64_t length = 1;

    friend bool operator==(const Segment&, const Segment&) = default;
    friend bool operator<(const Segment& a, const Segment& b) {
        if (a.line != b.line) return a.line < b.line;
        if (a.offset != b.offset) return a.offset < b.offset;
        return a.length < b.length;
    }
};

// Zelevinski Z(m) and Langlands L(m) labels share the multisegment index.
enum class LabelConvention { zelevinski, langlands };

struct Multisegment {
    std::vector<Segment> segments;  // kept sorted by (line, offset, length)
    LabelConvention convention = LabelConvention::zelevinski;

    friend bool operator==(const Multisegment& a, const Multisegment& b) {
        return a.segments == b.segments;
    }
};

inline Multisegment make_multisegment(std::vector<Segment> segments,
                                      LabelConvention convention = LabelConvention::zelevinski) {
    for (const Segment& s : segments)
        if (s.length < 1) throw validation_error("segment length must be positive");
    std::sort(segments.begin(), segments.end());
    return Multisegment{std::move(segments), convention};
}

// The single segment of length e on a given line: the Steinberg label.
inline Multisegment steinberg(std::int64_t e, const std::string& line = "1") {
    return make_multisegment({Segment{line, 0, e}});
}

inline std::int64_t weight(const Multisegment& m) {
    std::int64_t w = 0;
    for (const Segment& s : m.segments) w += s.length;
    return w;
}

// A multisegment labels a representation of the rank-e Hecke factor H(e, q^f)
// exactly when its weight is e.
inline bool validate_for_block(const Multisegment& m, std::int64_t rank) {
    return weight(m) == rank;
}

inline bool validate_for_block(const Multisegment& m,
                               const std::pair<std::int64_t, std::int64_t>& hecke_factor) {
    return validate_for_block(m, hecke_factor.first);
}

// Normalized parabolic induction on labels: multiset union, weights add.
inline Multisegment transfer_levi(const std::vector<Multisegment>& parts) {
    std::vector<Segment> all;
    for (const Multisegment& m : parts) all.insert(all.end(), m.segments.begin(), m.segments.end());
    return make_multisegment(std::move(all));
}

// Totally ramified base change: the norm map identifies the unramified
// character lattices, so the transfer is the identity up to a recorded
// relabeling of lines.
inline Multisegment transfer_base_change_tr(const Multisegment& m,
                                            const std::map<std::string, std::string>& relabel = {}) {
    std::vector<Segment> out = m.segments;
    for (Segment& s : out) {
        auto it = relabel.find(s.line);
        if (it != relabel.end()) s.line = it->second;
    }
    return make_multisegment(std::move(out), m.convention);
}

// Unipotent transfer m -> m_pi: a length-preserving relabeling of lines,
// injective on the lines occurring in m. St_e maps to St_e.
inline Multisegment transfer_unipotent(const Multisegment& m,
                                       const std::map<std::string, std::string>& relabel) {
    std::map<std::string, std::string> seen;
    std::vector<Segment> out = m.segments;
    for (Segment& s : out) {
        auto it = relabel.find(s.line);
        if (it == relabel.end()) throw validation_error("relabeling does not cover line '" + s.line + "'");
        auto [pos, inserted] = seen.emplace(it->second, s.line);
        if (!inserted && pos->second != s.line)
            throw validation_error("relabeling is not injective on the occurring lines");
        s.line = it->second;
    }
    return make_multisegment(std::move(out), m.convention);
}

// Unramified twisting torsor: translate every offset by a global shift.
inline Multisegment twist_unramified(const Multisegment& m, std::int64_t shift) {
    std::vector<Segment> out = m.segments;
    for (Segment& s : out) s.offset += shift;
    return make_multisegment(std::move(out), m.convention);
}

// Per-line variant; lines missing from the map are left untouched.
inline Multisegment twist_unramified(const Multisegment& m,
                                     const std::map<std::string, std::int64_t>& shifts) {
    std::vector<Segment> out = m.segments;
    for (Segment& s : out) {
        auto it = shifts.find(s.line);
        if (it != shifts.end()) s.offset += it->second;
    }
    return make_multisegment(std::move(out), m.convention);
}

}  // namespace blockdual
