#pragma once

#include <optional>
#include <string_view>

namespace qcorr {

enum class MeasureKind {
  Discord,       // D: projective measurement on B
  SuperDiscord,  // D_w: weak measurement on B
  Deficit,       // one-way deficit, projective dephasing on B
  WeakDeficit,   // one-way deficit with weak dephasing on B
};

inline constexpr MeasureKind kAllKinds[] = {MeasureKind::Discord, MeasureKind::SuperDiscord, MeasureKind::Deficit,
                                            MeasureKind::WeakDeficit};

constexpr bool is_weak(MeasureKind k) { return k == MeasureKind::SuperDiscord || k == MeasureKind::WeakDeficit; }

constexpr bool is_deficit(MeasureKind k) { return k == MeasureKind::Deficit || k == MeasureKind::WeakDeficit; }

// CLI spelling: discord, super-discord, deficit, weak-deficit.
std::string_view to_string(MeasureKind k);
std::optional<MeasureKind> parse_measure_kind(std::string_view s);

}  // namespace qcorr
