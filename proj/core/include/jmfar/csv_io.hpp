#pragma once

#include <span>
#include <string>
#include <vector>

#include "jmfar/features.hpp"
#include "jmfar/types.hpp"

namespace jmfar {

// CSV formats. All files carry a header row; labels are case-insensitive.
//
//   blocks:   start_s,end_s,label
//   events:   timestamp_s,amplitude,duration_s
//   features: segment_start_s,f4,...,f24,flags

std::vector<ActivityBlock> read_block_csv(const std::string& path);
void write_block_csv(const std::string& path, std::span<const ActivityBlock> blocks);

std::vector<JmEvent> read_event_csv(const std::string& path);
void write_event_csv(const std::string& path, std::span<const JmEvent> events);

std::vector<FeatureVector> read_feature_csv(const std::string& path);
void write_feature_csv(const std::string& path, std::span<const FeatureVector> features);

}  // namespace jmfar
