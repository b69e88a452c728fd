#include "sharpdepth/manifest.hpp"

#include <fstream>
#include <sstream>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string t;
  while (is >> t) tokens.push_back(t);
  return tokens;
}

bool skip(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::vector<EvalRecord> read_eval_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path);
  std::vector<EvalRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 4)
      throw DataError("manifest line " + std::to_string(lineno) +
                      " needs: pred_path pred_format gt_path gt_format");
    records.push_back({tokens[0], DepthFileFormat::parse(tokens[1]), tokens[2],
                       DepthFileFormat::parse(tokens[3])});
  }
  return records;
}

std::vector<FuseRecord> read_fuse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path);
  std::vector<FuseRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 6 && tokens.size() != 18)
      throw DataError("fuse manifest line " + std::to_string(lineno) +
                      " needs: path format fx fy cx cy [12 pose numbers]");
    FuseRecord rec;
    rec.depth_path = tokens[0];
    rec.format = DepthFileFormat::parse(tokens[1]);
    try {
      rec.intrinsics = {std::stod(tokens[2]), std::stod(tokens[3]), std::stod(tokens[4]),
                        std::stod(tokens[5])};
      if (tokens.size() == 18) {
        // row-major 3x4: r r r t per row
        double m[12];
        for (int i = 0; i < 12; ++i) m[i] = std::stod(tokens[6 + i]);
        rec.pose.rotation = {m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10]};
        rec.pose.translation = {m[3], m[7], m[11]};
        rec.pose.check();
      }
    } catch (const std::invalid_argument&) {
      throw DataError("fuse manifest line " + std::to_string(lineno) + " has a bad number");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace sharpdepth
