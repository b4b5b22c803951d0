#include "fastspread/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fastspread {

namespace {

void byteswap_if_needed(std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) return;
  for (double& x : v) {
    std::uint64_t u;
    std::memcpy(&u, &x, 8);
    u = __builtin_bswap64(u);
    std::memcpy(&x, &u, 8);
  }
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f, double time) {
  nlohmann::json header;
  header["dim"] = f.grid.dim;
  header["n"] = std::vector<int>(f.grid.n.begin(), f.grid.n.begin() + f.grid.dim);
  header["half_length"] = std::vector<double>(f.grid.half_length.begin(),
                                              f.grid.half_length.begin() + f.grid.dim);
  header["topology"] =
      f.grid.topology == Topology::FullSpace ? "full_space" : "channel";
  header["time"] = time;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  out << header.dump() << '\n';
  std::vector<double> payload = f.values;
  byteswap_if_needed(payload);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_snapshot: missing header line");
  const nlohmann::json header = nlohmann::json::parse(line);

  GridSpec g;
  g.dim = header.at("dim").get<int>();
  const auto n = header.at("n").get<std::vector<int>>();
  const auto hl = header.at("half_length").get<std::vector<double>>();
  if (static_cast<int>(n.size()) != g.dim || static_cast<int>(hl.size()) != g.dim)
    throw std::runtime_error("read_snapshot: inconsistent header dimensions");
  g.n = {1, 1, 1};
  g.half_length = {0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    g.n[a] = n[a];
    g.half_length[a] = hl[a];
  }
  if (g.dim == 2) g.n[2] = 1;
  const std::string topo = header.at("topology").get<std::string>();
  g.topology = topo == "channel" ? Topology::Channel : Topology::FullSpace;
  g.validate();

  Snapshot snap;
  snap.time = header.at("time").get<double>();
  snap.field = ScalarField(g);
  in.read(reinterpret_cast<char*>(snap.field.values.data()),
          static_cast<std::streamsize>(snap.field.values.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) !=
      snap.field.values.size() * sizeof(double))
    throw std::runtime_error("read_snapshot: truncated payload in " + path);
  byteswap_if_needed(snap.field.values);
  return snap;
}

}  // namespace fastspread
