#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hldet {

/// One highlight annotation as an inclusive range of whole-second indices.
/// [start_s, end_s] covers end_s - start_s + 1 seconds; start_s < end_s is
/// required, so the shortest representable highlight spans two seconds.
struct HighlightInterval {
    int start_s = 0;
    int end_s = 0;

    int length_s() const { return end_s - start_s + 1; }
};

/// The ordered, non-overlapping highlight annotations of one recording.
/// Valid second indices of the recording are 0 .. duration_s - 1.
class HighlightSet {
public:
    HighlightSet() = default;

    /// Throws std::invalid_argument on unordered, overlapping, inverted or
    /// out-of-range intervals.
    HighlightSet(std::vector<HighlightInterval> intervals, int duration_s);

    const std::vector<HighlightInterval>& intervals() const { return intervals_; }
    int duration_s() const { return duration_s_; }
    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }

    /// True iff second index tau lies inside some interval.
    bool covers_second(int tau) const;

private:
    std::vector<HighlightInterval> intervals_;
    int duration_s_ = 0;
};

/// A k-second analysis window starting at start_s; covers second indices
/// start_s .. start_s + length_s - 1.
struct ChunkWindow {
    int start_s = 0;
    int length_s = 0;

    int last_second() const { return start_s + length_s - 1; }
    bool contains_second(int tau) const {
        return tau >= start_s && tau <= last_second();
    }
};

/// Binary chunk label: 1 iff the window shares at least one second with a
/// highlight, 0 otherwise. Throws std::out_of_range if the window is not
/// fully inside the recording.
int label_chunk(const ChunkWindow& window, const HighlightSet& highlights);

/// Sliding windows of length k starting at 0, stride_s, 2*stride_s, ...
/// while they fit; if the aligned grid stops short of duration_s - k, one
/// tail window at duration_s - k is appended so every second is covered.
/// Throws std::invalid_argument if k > duration_s, k < 1 or stride_s < 1.
std::vector<ChunkWindow> make_windows(int duration_s, int k, int stride_s);

/// Annotation file: {"duration_s": int, "highlights": [[start_s, end_s], ...]}.
void save_annotation(const HighlightSet& set, const std::filesystem::path& path);
HighlightSet load_annotation(const std::filesystem::path& path);

} // namespace hldet
