#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "iotrace/aggregator/aggregator.hpp"

namespace iotrace::aggregator {

inline constexpr int kViewerVersion = 1;

std::string encode_viewer_json(const CallTupleSet& tuples,
                               const std::map<std::string, Histogram>& histograms);

/// Reads back the tuples; the stored histograms are ignored so callers
/// recompute them. Throws AggregatorError BadViewerJson.
CallTupleSet decode_viewer_json(const std::string& text);

/// Throws EmptyInput for an empty tuple set and IoError on write failure.
void export_viewer_json(const CallTupleSet& tuples,
                        const std::map<std::string, Histogram>& histograms,
                        const std::filesystem::path& path);

CallTupleSet load_viewer_json(const std::filesystem::path& path);

}  // namespace iotrace::aggregator
