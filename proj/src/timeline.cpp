#include "hldet/timeline.hpp"

#include "hldet/common.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hldet {

HighlightSet::HighlightSet(std::vector<HighlightInterval> intervals, int duration_s)
    : intervals_(std::move(intervals)), duration_s_(duration_s) {
    if (duration_s_ < 0) {
        throw std::invalid_argument("HighlightSet: negative duration");
    }
    int prev_end = -1;
    for (const auto& iv : intervals_) {
        if (iv.start_s < 0 || iv.start_s >= iv.end_s) {
            throw std::invalid_argument("HighlightSet: interval must satisfy 0 <= start_s < end_s");
        }
        if (iv.end_s >= duration_s_) {
            throw std::invalid_argument("HighlightSet: interval exceeds recording duration");
        }
        if (iv.start_s <= prev_end) {
            throw std::invalid_argument("HighlightSet: intervals must be ordered and non-overlapping");
        }
        prev_end = iv.end_s;
    }
}

bool HighlightSet::covers_second(int tau) const {
    for (const auto& iv : intervals_) {
        if (tau < iv.start_s) return false;
        if (tau <= iv.end_s) return true;
    }
    return false;
}

int label_chunk(const ChunkWindow& window, const HighlightSet& highlights) {
    if (window.start_s < 0 || window.length_s < 1 ||
        window.start_s + window.length_s > highlights.duration_s()) {
        throw std::out_of_range("label_chunk: window outside recording bounds");
    }
    const int lo = window.start_s;
    const int hi = window.last_second();
    for (const auto& iv : highlights.intervals()) {
        if (iv.start_s <= hi && iv.end_s >= lo) return 1;
    }
    return 0;
}

std::vector<ChunkWindow> make_windows(int duration_s, int k, int stride_s) {
    if (k < 1 || k > duration_s) {
        throw std::invalid_argument("make_windows: need 1 <= k <= duration_s");
    }
    if (stride_s < 1) {
        throw std::invalid_argument("make_windows: stride_s must be >= 1");
    }
    std::vector<ChunkWindow> windows;
    const int last_start = duration_s - k;
    int start = 0;
    for (; start <= last_start; start += stride_s) {
        windows.push_back({start, k});
    }
    if (windows.back().start_s < last_start) {
        windows.push_back({last_start, k});
    }
    return windows;
}

void save_annotation(const HighlightSet& set, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["duration_s"] = set.duration_s();
    auto& hl = doc["highlights"] = nlohmann::json::array();
    for (const auto& iv : set.intervals()) {
        hl.push_back({iv.start_s, iv.end_s});
    }
    std::ofstream out(path);
    if (!out) throw FormatError("save_annotation: cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

HighlightSet load_annotation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_annotation: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("load_annotation: " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("duration_s") || !doc.contains("highlights")) {
        throw FormatError("load_annotation: missing duration_s/highlights in " + path.string());
    }
    std::vector<HighlightInterval> intervals;
    for (const auto& pair : doc["highlights"]) {
        if (!pair.is_array() || pair.size() != 2) {
            throw FormatError("load_annotation: highlight entries must be [start_s, end_s]");
        }
        intervals.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
    return HighlightSet(std::move(intervals), doc["duration_s"].get<int>());
}

} // namespace hldet
