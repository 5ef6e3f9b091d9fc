#include "mcoords/serialize.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "mcoords/errors.hpp"

namespace mc {

namespace {

constexpr char kMagic[4] = {'M', 'T', 'R', 'E'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
  std::vector<std::uint8_t> buf;

  void raw(const void* p, std::size_t len) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    buf.insert(buf.end(), b, b + len);
  }
  void u32(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    raw(b, 4);
  }
  void u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    raw(b, 8);
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void complex(const std::complex<double>& z) {
    f64(z.real());
    f64(z.imag());
  }
  void str(const std::string& s) {
    u64(s.size());
    raw(s.data(), s.size());
  }
  void cvec(const std::vector<std::complex<double>>& v) {
    u64(v.size());
    for (const auto& z : v) complex(z);
  }
  void uvec(const std::vector<std::uint64_t>& v) {
    u64(v.size());
    for (std::uint64_t x : v) u64(x);
  }
  void solution(const Solution& s) {
    u64(static_cast<std::uint64_t>(s.tag));
    cvec(s.coords);
  }
};

struct Reader {
  const std::vector<std::uint8_t>& buf;
  std::size_t pos = 0;

  void need(std::size_t len) const {
    if (pos + len > buf.size()) throw FormatError("truncated tree file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{buf[pos + i]} << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[pos + i]} << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::complex<double> complex() {
    double re = f64();
    double im = f64();
    return {re, im};
  }
  std::string str() {
    std::uint64_t len = u64();
    need(len);
    std::string s(reinterpret_cast<const char*>(buf.data() + pos), len);
    pos += len;
    return s;
  }
  std::vector<std::complex<double>> cvec() {
    std::uint64_t len = u64();
    std::vector<std::complex<double>> v(len);
    for (auto& z : v) z = complex();
    return v;
  }
  std::vector<std::uint64_t> uvec() {
    std::uint64_t len = u64();
    std::vector<std::uint64_t> v(len);
    for (auto& x : v) x = u64();
    return v;
  }
  Solution solution() {
    Solution s;
    s.tag = static_cast<std::int64_t>(u64());
    s.coords = cvec();
    return s;
  }
};

void write_descriptor(Writer& w, const OracleDescriptor& desc) {
  w.u64(static_cast<std::uint64_t>(desc.kind));
  switch (desc.kind) {
    case BackendKind::Synthetic:
    case BackendKind::Example2:
      w.u64(desc.d);
      w.u64(desc.n);
      w.u64(desc.seed);
      w.u64(desc.require_transitive ? 1 : 0);
      w.str(desc.rng_id);
      break;
    case BackendKind::Parametric:
      w.u64(desc.d);
      w.f64(desc.tracker.initial_step);
      w.f64(desc.tracker.min_step);
      w.f64(desc.tracker.newton_tolerance);
      w.u64(static_cast<std::uint64_t>(desc.tracker.max_newton_iters));
      w.f64(desc.tracker.step_expansion);
      w.f64(desc.tracker.step_contraction);
      w.cvec(desc.base_coeffs);
      w.cvec(desc.q1);
      w.cvec(desc.q2);
      w.cvec(desc.q3);
      w.cvec(desc.q4);
      break;
  }
}

OracleDescriptor read_descriptor(Reader& r) {
  OracleDescriptor desc;
  std::uint64_t kind = r.u64();
  switch (kind) {
    case 1:
    case 2:
      desc.kind = static_cast<BackendKind>(kind);
      desc.d = r.u64();
      desc.n = r.u64();
      desc.seed = r.u64();
      desc.require_transitive = r.u64() != 0;
      desc.rng_id = r.str();
      break;
    case 3:
      desc.kind = BackendKind::Parametric;
      desc.d = r.u64();
      desc.n = 1;
      desc.tracker.initial_step = r.f64();
      desc.tracker.min_step = r.f64();
      desc.tracker.newton_tolerance = r.f64();
      desc.tracker.max_newton_iters = static_cast<int>(r.u64());
      desc.tracker.step_expansion = r.f64();
      desc.tracker.step_contraction = r.f64();
      desc.base_coeffs = r.cvec();
      desc.q1 = r.cvec();
      desc.q2 = r.cvec();
      desc.q3 = r.cvec();
      desc.q4 = r.cvec();
      break;
    default:
      throw FormatError("unknown oracle backend tag in tree file");
  }
  return desc;
}

bool has_seed(RepType t) {
  return t == RepType::I || t == RepType::II || t == RepType::III;
}

std::uint32_t checksum(const std::vector<std::uint8_t>& buf, std::size_t len) {
  return static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), buf.data(), static_cast<uInt>(len)));
}

std::string hex_double(double v) {
  char out[40];
  std::snprintf(out, sizeof out, "%a", v);
  return out;
}

nlohmann::json solution_to_json(const Solution& s) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& z : s.coords)
    coords.push_back({hex_double(z.real()), hex_double(z.imag())});
  return {{"tag", s.tag}, {"coords", coords}};
}

}  // namespace

std::vector<std::uint8_t> serialize(const MonodromyTree& tree) {
  Writer w;
  w.raw(kMagic, 4);
  w.u32(kVersion);
  w.u64(static_cast<std::uint64_t>(tree.rep_type));
  w.u64(tree.n);
  w.u64(tree.k);
  w.u64(tree.d);
  w.u64(tree.cycle_count());
  w.u64(tree.alpha);

  if (has_seed(tree.rep_type)) w.solution(tree.seed);
  if (tree.rep_type != RepType::I) w.uvec(tree.founders);
  if (tree.rep_type != RepType::I && tree.rep_type != RepType::II)
    w.uvec(tree.cycle_sizes);
  if (tree.rep_type == RepType::IV || tree.rep_type == RepType::V) {
    w.u64(tree.rep_groups.size());
    for (const auto& group : tree.rep_groups) {
      w.u64(group.size());
      for (const Solution& s : group) w.solution(s);
    }
  }
  write_descriptor(w, tree.descriptor);
  w.u32(checksum(w.buf, w.buf.size()));
  return std::move(w.buf);
}

MonodromyTree deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("not a tree file (bad magic)");
  Reader r{bytes, 4};
  if (r.u32() != kVersion) throw FormatError("unsupported tree file version");

  std::uint32_t stored_crc = 0;
  if (bytes.size() < 4) throw FormatError("truncated tree file");
  for (int i = 0; i < 4; ++i)
    stored_crc |= std::uint32_t{bytes[bytes.size() - 4 + i]} << (8 * i);
  if (checksum(bytes, bytes.size() - 4) != stored_crc)
    throw FormatError("tree file checksum mismatch");

  MonodromyTree tree;
  std::uint64_t rep = r.u64();
  if (rep < 1 || rep > 5) throw FormatError("unknown representation type");
  tree.rep_type = static_cast<RepType>(rep);
  tree.n = r.u64();
  tree.k = r.u64();
  tree.d = r.u64();
  std::uint64_t cycles = r.u64();
  tree.alpha = r.u64();

  if (has_seed(tree.rep_type)) tree.seed = r.solution();
  if (tree.rep_type != RepType::I) tree.founders = r.uvec();
  if (tree.rep_type != RepType::I && tree.rep_type != RepType::II)
    tree.cycle_sizes = r.uvec();
  if (tree.rep_type == RepType::IV || tree.rep_type == RepType::V) {
    std::uint64_t groups = r.u64();
    tree.rep_groups.resize(groups);
    for (auto& group : tree.rep_groups) {
      std::uint64_t len = r.u64();
      group.resize(len);
      for (Solution& s : group) s = r.solution();
    }
  }
  tree.descriptor = read_descriptor(r);
  if (r.pos != bytes.size() - 4)
    throw FormatError("trailing bytes in tree file");
  if (!tree.cycle_sizes.empty() && tree.cycle_sizes.size() != cycles)
    throw FormatError("cycle count disagrees with header");
  return tree;
}

void write_tree_file(const std::string& path, const MonodromyTree& tree) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  auto bytes = serialize(tree);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("short write to '" + path + "'");
}

MonodromyTree read_tree_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

nlohmann::json tree_to_json(const MonodromyTree& tree) {
  nlohmann::json j;
  j["format_version"] = kVersion;
  j["rep_type"] = static_cast<int>(tree.rep_type);
  j["n"] = tree.n;
  j["k"] = tree.k;
  j["d"] = tree.d;
  j["r"] = tree.cycle_count();
  j["alpha"] = tree.alpha;  // 0 encodes infinity
  if (has_seed(tree.rep_type)) j["seed_solution"] = solution_to_json(tree.seed);
  if (tree.rep_type != RepType::I) j["founders"] = tree.founders;
  if (tree.rep_type != RepType::I && tree.rep_type != RepType::II)
    j["cycle_sizes"] = tree.cycle_sizes;
  if (tree.rep_type == RepType::IV || tree.rep_type == RepType::V) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& group : tree.rep_groups) {
      nlohmann::json g = nlohmann::json::array();
      for (const Solution& s : group) g.push_back(solution_to_json(s));
      groups.push_back(std::move(g));
    }
    j["rep_groups"] = std::move(groups);
  }

  const OracleDescriptor& desc = tree.descriptor;
  nlohmann::json dj;
  dj["kind"] = static_cast<int>(desc.kind);
  dj["d"] = desc.d;
  if (desc.kind == BackendKind::Parametric) {
    dj["tracker"] = {{"initial_step", desc.tracker.initial_step},
                     {"min_step", desc.tracker.min_step},
                     {"newton_tolerance", desc.tracker.newton_tolerance},
                     {"max_newton_iters", desc.tracker.max_newton_iters},
                     {"step_expansion", desc.tracker.step_expansion},
                     {"step_contraction", desc.tracker.step_contraction}};
    auto cvec = [](const std::vector<std::complex<double>>& v) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& z : v)
        out.push_back({hex_double(z.real()), hex_double(z.imag())});
      return out;
    };
    dj["base_coeffs"] = cvec(desc.base_coeffs);
    dj["q1"] = cvec(desc.q1);
    dj["q2"] = cvec(desc.q2);
    dj["q3"] = cvec(desc.q3);
    dj["q4"] = cvec(desc.q4);
  } else {
    dj["n"] = desc.n;
    dj["seed"] = desc.seed;
    dj["require_transitive"] = desc.require_transitive;
    dj["rng_id"] = desc.rng_id;
  }
  j["oracle"] = std::move(dj);
  return j;
}

void write_tree_json(const std::string& path, const MonodromyTree& tree) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out << tree_to_json(tree).dump(2) << "\n";
}

}  // namespace mc
