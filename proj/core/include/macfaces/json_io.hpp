#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "macfaces/counting.hpp"
#include "macfaces/label.hpp"
#include "macfaces/membership.hpp"
#include "macfaces/oracle.hpp"
#include "macfaces/region.hpp"

namespace macfaces {

// Channel files are JSON objects with the fields
//   users        int
//   input_sizes  [int, ...]            one per user
//   output_size  int
//   input_pmfs   [[double, ...], ...]  one pmf per user
//   transition   [[double, ...], ...]  one row per joint input, x_1 slowest
// Parsing validates the result (see channel.hpp); all errors are reported as
// ValidationError naming the field.
ChannelSpec parse_channel_json(const std::string& text);
ChannelSpec load_channel_json(const std::filesystem::path& path);

// Serializers for the CLI's --json modes.  They return finished documents
// (pretty-printed, trailing newline) so callers can write them verbatim.
// Labels always appear in their text syntax, e.g. "F({1,2}>{1}|)", which
// parse_label accepts back.
std::string degeneracy_to_json(const DegeneracyReport& report);
std::string plan_to_json(const DecodingPlan& plan);
std::string faces_to_json(int users, const std::vector<FaceLabel>& faces);
std::string locate_to_json(const LocateResult& result);
std::string vertices_to_json(const oracle::VertexSet& vs);
std::string cross_validate_to_json(const oracle::CrossValidateReport& report);
std::string counts_to_json(const counting::FaceCounts& counts);

}  // namespace macfaces
