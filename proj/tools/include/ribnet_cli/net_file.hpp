#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ribnet/cauchy.hpp"
#include "ribnet/net.hpp"
#include "ribnet_cli/json_reader.hpp"

// The net interchange file: a JSON document tagged "ribnet.net/1".
//
// Point records carry chart coordinates (or an infinity flag) and the
// homogeneous coefficients on e_0, e_1..e_n, e_inf. The chart is read back
// as the point; the coefficients are compared with it and any disagreement
// is kept as a record residual. Edge spheres use the same coefficient basis.
// Frames list every blade coefficient on the orthonormal basis f_0..f_{n+1},
// indexed by generator bitmask. Numbers are written with round-trip precision.
namespace ribnet::cli {

inline constexpr const char* kNetSchema = "ribnet.net/1";

struct RecordResidual {
  std::size_t vertex = 0;
  bool companion = false;
  double distance = 0.0;
};

struct NetDocument {
  int n = 0;
  Lattice lattice;
  bool euclidean = false;
  std::vector<std::optional<ConformalPoint>> F;
  std::vector<std::optional<ConformalPoint>> Fhat;  // empty when no record has F^
  EdgeField edge_spheres;                            // empty when absent
  SpinFrameField frames;                             // empty when absent
  std::vector<RecordResidual> record_residuals;
};

struct WriteOptions {
  bool frames = true;
  bool edge_spheres = true;
  int max_support = -1;  // keep only vertices with at most this many nonzero coordinates
};

ordered_json net_to_json(const PairNet& net, const WriteOptions& opts = {});
ordered_json initial_data_to_json(const InitialData& init);

// Throws InputError on anything malformed.
NetDocument net_from_json(const json& doc);
NetDocument read_net_file(const std::string& file);

// A complete net; edge vectors are derived from the frames. Throws InputError
// when vertices are missing.
PairNet to_pair_net(const NetDocument& doc);
InitialData to_initial_data(const NetDocument& doc);

std::string dump(const ordered_json& doc);
void write_text_file(const std::string& file, const std::string& text);

}  // namespace ribnet::cli
