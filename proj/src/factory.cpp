#include "o3/factory.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace o3 {

namespace {

[[noreturn]] void bad_name(const std::string& raw, const std::string& why) {
  throw std::invalid_argument("bad group name '" + raw + "': " + why);
}

uint64_t parse_uint(const std::string& raw, const std::string& tok) {
  if (tok.empty() || tok.size() > 18) bad_name(raw, "expected a number, got '" + tok + "'");
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_name(raw, "expected a number, got '" + tok + "'");
  return std::stoull(tok);
}

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::pair<uint32_t, uint32_t> factor_prime_power(uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  for (uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    uint32_t k = 0;
    uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) throw std::invalid_argument("field size " + std::to_string(q) + " is not a prime power");
    return {static_cast<uint32_t>(p), k};
  }
  return {static_cast<uint32_t>(q), 1};  // q itself is prime
}

ParsedName parse_group_name(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) bad_name(raw, "empty");

  std::string head = s, inner;
  bool has_args = false;
  const size_t lp = s.find('(');
  if (lp != std::string::npos) {
    if (s.back() != ')') bad_name(raw, "missing ')'");
    head = s.substr(0, lp);
    inner = s.substr(lp + 1, s.size() - lp - 2);
    has_args = true;
  }

  ParsedName pn;
  auto one_int = [&]() -> uint64_t {
    if (!has_args) bad_name(raw, head + " takes one argument");
    const auto args = split_args(inner);
    if (args.size() != 1) bad_name(raw, head + " takes one argument");
    return parse_uint(raw, args[0]);
  };
  auto two_ints = [&]() -> std::pair<uint64_t, uint64_t> {
    if (!has_args) bad_name(raw, head + " takes two arguments");
    const auto args = split_args(inner);
    if (args.size() != 2) bad_name(raw, head + " takes two arguments");
    return {parse_uint(raw, args[0]), parse_uint(raw, args[1])};
  };
  auto check_q = [&](uint64_t q) {
    if (q < 2 || q > (1u << 20)) bad_name(raw, "field size out of range");
    factor_prime_power(q);  // throws if not a prime power
    return static_cast<uint32_t>(q);
  };

  if (head == "Alt" || head == "Sym") {
    const uint64_t n = one_int();
    if (n < 1 || n > 65535) bad_name(raw, "degree out of range");
    pn.family = head == "Alt" ? Family::Alt : Family::Sym;
    pn.n = static_cast<uint32_t>(n);
    pn.canonical = head + "(" + std::to_string(n) + ")";
  } else if (head == "PSL" || head == "PGL" || head == "PSU" || head == "PGU") {
    const auto [n, q] = two_ints();
    pn.q = check_q(q);
    pn.n = static_cast<uint32_t>(n);
    if (head == "PSL") {
      if (n < 2 || n > 4) bad_name(raw, "PSL dimension must be 2, 3 or 4");
      pn.family = n == 2 ? Family::PSL2 : n == 3 ? Family::PSL3 : Family::PSL4;
    } else if (head == "PGL") {
      if (n != 3) bad_name(raw, "only PGL(3,q) is supported");
      pn.family = Family::PGL3;
    } else if (head == "PSU") {
      if (n != 3 && n != 4) bad_name(raw, "PSU dimension must be 3 or 4");
      pn.family = n == 3 ? Family::PSU3 : Family::PSU4;
    } else {
      if (n != 3) bad_name(raw, "only PGU(3,q) is supported");
      pn.family = Family::PGU3;
    }
    pn.canonical = head + "(" + std::to_string(n) + "," + std::to_string(q) + ")";
  } else if (head == "Sp4") {
    pn.q = check_q(one_int());
    pn.n = 4;
    pn.family = Family::Sp4;
    pn.canonical = "Sp4(" + std::to_string(pn.q) + ")";
  } else if (head == "PGammaL2") {
    pn.q = check_q(one_int());
    pn.n = 2;
    pn.family = Family::PGammaL2;
    pn.canonical = "PGammaL2(" + std::to_string(pn.q) + ")";
  } else if (head == "FrobA4") {
    if (has_args && !inner.empty()) bad_name(raw, "FrobA4 takes no arguments");
    pn.family = Family::FrobA4;
    pn.canonical = "FrobA4";
  } else if (head == "Wreath") {
    if (!has_args || inner != "PSL2(16),Sym2")
      bad_name(raw, "the supported wreath product is Wreath(PSL2(16),Sym2)");
    pn.family = Family::Wreath;
    pn.canonical = "Wreath(PSL2(16),Sym2)";
  } else if (head == "Bundle") {
    if (!has_args || inner.empty()) bad_name(raw, "Bundle takes a file path");
    pn.family = Family::Bundle;
    pn.path = inner;
    pn.canonical = "Bundle(" + inner + ")";
  } else {
    bad_name(raw, "unknown family '" + head + "'");
  }
  return pn;
}

std::vector<Perm> alt_generators(uint32_t n) {
  std::vector<Perm> gens;
  if (n < 3) return gens;
  std::vector<uint16_t> a(n);
  for (uint32_t i = 0; i < n; ++i) a[i] = static_cast<uint16_t>(i);
  a[0] = 1;
  a[1] = 2;
  a[2] = 0;
  gens.push_back(Perm::from_images(std::move(a)));
  if (n == 3) return gens;
  std::vector<uint16_t> b(n);
  if (n % 2 == 1) {
    for (uint32_t i = 0; i < n; ++i) b[i] = static_cast<uint16_t>((i + 1) % n);
  } else {
    b[0] = 0;
    for (uint32_t i = 1; i < n; ++i) b[i] = static_cast<uint16_t>(i == n - 1 ? 1 : i + 1);
  }
  gens.push_back(Perm::from_images(std::move(b)));
  return gens;
}

std::vector<Perm> sym_generators(uint32_t n) {
  std::vector<Perm> gens;
  if (n < 2) return gens;
  std::vector<uint16_t> a(n);
  for (uint32_t i = 0; i < n; ++i) a[i] = static_cast<uint16_t>(i);
  a[0] = 1;
  a[1] = 0;
  gens.push_back(Perm::from_images(std::move(a)));
  if (n == 2) return gens;
  std::vector<uint16_t> b(n);
  for (uint32_t i = 0; i < n; ++i) b[i] = static_cast<uint16_t>((i + 1) % n);
  gens.push_back(Perm::from_images(std::move(b)));
  return gens;
}

namespace {

uint64_t factorial_checked(uint32_t n) {
  if (n > 20) throw ResourceError("group order exceeds 64 bits for degree " + std::to_string(n));
  uint64_t f = 1;
  for (uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

struct FamilyBuild {
  std::vector<Perm> gens;
  std::vector<Perm> socle_gens;  // empty when the group is its own socle
  std::unique_ptr<LiftData> lift;
  uint64_t expected = 0;
};

void check_degree(uint64_t deg) {
  if (deg > 65535) throw ResourceError("permutation degree " + std::to_string(deg) + " exceeds 65535");
}

uint64_t projective_degree(uint64_t q, uint32_t n) {
  uint64_t d = 0, qi = 1;
  for (uint32_t i = 0; i < n; ++i) {
    d += qi;
    qi *= q;
  }
  return d;
}

FamilyBuild build_matrix_family(const ParsedName& pn) {
  const auto [p, k] = factor_prime_power(pn.q);
  const bool unitary = pn.family == Family::PSU3 || pn.family == Family::PSU4 ||
                       pn.family == Family::PGU3;
  FamilyBuild fb;
  fb.lift = std::make_unique<LiftData>();
  fb.lift->field = std::make_unique<Field>(p, unitary ? 2 * k : k);
  const Field& F = *fb.lift->field;

  std::vector<Mat> mats, socle_mats;
  switch (pn.family) {
    case Family::PSL2:
    case Family::PSL3:
    case Family::PSL4:
      mats = sl_generators(F, pn.n);
      fb.expected = psl_order(pn.n, pn.q);
      break;
    case Family::PGL3:
      mats = gl_generators(F, 3);
      socle_mats = sl_generators(F, 3);
      fb.expected = pgl_order(3, pn.q);
      break;
    case Family::PSU3:
    case Family::PSU4:
      mats = su_generators(F, pn.n);
      fb.expected = psu_order(pn.n, pn.q);
      break;
    case Family::PGU3:
      mats = gu_generators(F, 3);
      socle_mats = su_generators(F, 3);
      fb.expected = pgu_order(3, pn.q);
      break;
    case Family::Sp4:
      mats = sp4_generators(F);
      fb.expected = sp4_order(pn.q);
      break;
    case Family::PGammaL2:
      mats = gl_generators(F, 2);
      socle_mats = sl_generators(F, 2);
      fb.expected = pgl_order(2, pn.q) * k;
      break;
    default:
      throw std::logic_error("build_matrix_family: not a matrix family");
  }

  if (pn.family == Family::Sp4) {
    uint64_t deg = 1;
    for (uint32_t i = 0; i < 4; ++i) deg *= pn.q;
    check_degree(deg - 1);
    fb.lift->points = vector_points(F, 4);
    fb.lift->vector_action = true;
  } else {
    check_degree(projective_degree(F.q(), pn.n));
    fb.lift->points = projective_points(F, pn.n);
  }

  for (const Mat& m : mats) fb.gens.push_back(action_perm(fb.lift->points, m));
  for (const Mat& m : socle_mats) fb.socle_gens.push_back(action_perm(fb.lift->points, m));
  if (pn.family == Family::PGammaL2) fb.gens.push_back(frobenius_perm(fb.lift->points, 1));
  return fb;
}

FamilyBuild build_frob_a4() {
  // Z_5^2 semidirect Alt(4), the action factoring through Alt(4)/V = Z_3
  // acting on Z_5^2 by the order-3 matrix [[0,-1],[1,-1]].  Points: the 25
  // affine points (x,y) -> 5x + y, then the 4 natural Alt(4) points 25..28.
  // Faithful of order 300; the three involutions all lie in V and act only
  // on the tail.
  const uint32_t deg = 29;
  auto affine_linear = [&](std::vector<uint16_t>& img) {
    for (uint32_t x = 0; x < 5; ++x)
      for (uint32_t y = 0; y < 5; ++y) {
        const uint32_t nx = (5 - y) % 5;        // 0*x - 1*y
        const uint32_t ny = (x + 5 - y) % 5;    // 1*x - 1*y
        img[5 * x + y] = static_cast<uint16_t>(5 * nx + ny);
      }
  };
  std::vector<Perm> gens;
  {
    std::vector<uint16_t> img(deg);
    for (uint32_t i = 0; i < deg; ++i) img[i] = static_cast<uint16_t>(i);
    affine_linear(img);
    img[25] = 26;  // 3-cycle on the first three tail points
    img[26] = 27;
    img[27] = 25;
    gens.push_back(Perm::from_images(std::move(img)));
  }
  {
    std::vector<uint16_t> img(deg);
    for (uint32_t i = 0; i < deg; ++i) img[i] = static_cast<uint16_t>(i);
    img[25] = 26;  // double transposition, inside V so the affine part rests
    img[26] = 25;
    img[27] = 28;
    img[28] = 27;
    gens.push_back(Perm::from_images(std::move(img)));
  }
  for (uint32_t axis = 0; axis < 2; ++axis) {
    std::vector<uint16_t> img(deg);
    for (uint32_t i = 0; i < deg; ++i) img[i] = static_cast<uint16_t>(i);
    for (uint32_t x = 0; x < 5; ++x)
      for (uint32_t y = 0; y < 5; ++y) {
        const uint32_t nx = axis == 0 ? (x + 1) % 5 : x;
        const uint32_t ny = axis == 1 ? (y + 1) % 5 : y;
        img[5 * x + y] = static_cast<uint16_t>(5 * nx + ny);
      }
    gens.push_back(Perm::from_images(std::move(img)));
  }
  FamilyBuild fb;
  fb.gens = std::move(gens);
  fb.expected = 300;
  return fb;
}

FamilyBuild build_wreath() {
  // Two commuting copies of PSL(2,16) on 17 + 17 points plus the swap.
  const auto [p, k] = factor_prime_power(16);
  Field F(p, k);
  const PointTable pts = projective_points(F, 2);
  std::vector<Perm> inner;
  for (const Mat& m : sl_generators(F, 2)) inner.push_back(action_perm(pts, m));

  FamilyBuild fb;
  const uint32_t deg = 34;
  for (const Perm& g : inner) {
    std::vector<uint16_t> img(deg);
    for (uint32_t i = 0; i < 17; ++i) img[i] = g[i];
    for (uint32_t i = 17; i < deg; ++i) img[i] = static_cast<uint16_t>(i);
    fb.gens.push_back(Perm::from_images(std::move(img)));
  }
  std::vector<uint16_t> swap(deg);
  for (uint32_t i = 0; i < 17; ++i) {
    swap[i] = static_cast<uint16_t>(i + 17);
    swap[i + 17] = static_cast<uint16_t>(i);
  }
  fb.gens.push_back(Perm::from_images(std::move(swap)));
  fb.expected = 2 * 4080ull * 4080ull;
  return fb;
}

FamilyBuild build_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bundle file '" + path + "'");
  uint32_t degree = 0;
  uint64_t stated_order = 0;
  bool have_degree = false, have_order = false;
  FamilyBuild fb;
  std::string line;
  size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("bundle '" + path + "' line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "name") {
      // informational only
    } else if (key == "degree") {
      if (!(ls >> degree) || degree == 0 || degree > 65535) fail("bad degree");
      have_degree = true;
    } else if (key == "order") {
      if (!(ls >> stated_order) || stated_order == 0) fail("bad order");
      have_order = true;
    } else if (key == "gen") {
      if (!have_degree) fail("gen before degree");
      std::vector<uint16_t> img(degree);
      for (uint32_t i = 0; i < degree; ++i) {
        uint32_t v;
        if (!(ls >> v) || v >= degree) fail("bad image list");
        img[i] = static_cast<uint16_t>(v);
      }
      uint32_t extra;
      if (ls >> extra) fail("too many images");
      try {
        fb.gens.push_back(Perm::from_images(std::move(img)));
      } catch (const std::exception& e) {
        fail(e.what());
      }
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!have_degree || !have_order) fail("missing degree or order");
  if (fb.gens.empty()) fail("no generators");
  fb.expected = stated_order;
  return fb;
}

void apply_exclusions(GroupHandle& h) {
  const ParsedName& pn = h.meta;
  auto excl = [&](const std::string& why) {
    h.excluded = true;
    h.exclusion_reason = why;
  };
  switch (pn.family) {
    case Family::Alt:
      if (pn.n <= 4) excl("Alt(" + std::to_string(pn.n) + ") is solvable, not almost simple");
      break;
    case Family::Sym:
      if (pn.n <= 4) excl("Sym(" + std::to_string(pn.n) + ") is solvable, not almost simple");
      break;
    case Family::PSL2:
      if (pn.q == 2) excl("PSL(2,2) is solvable (isomorphic to Sym(3))");
      if (pn.q == 3) excl("PSL(2,3) is solvable (isomorphic to Alt(4))");
      break;
    case Family::PSU3:
      if (pn.q == 2) excl("PSU(3,2) is solvable of order 72");
      break;
    case Family::PGU3:
      if (pn.q == 2) excl("PGU(3,2) has solvable socle PSU(3,2)");
      break;
    case Family::Sp4:
      if (pn.q == 2) excl("Sp4(2) is not simple; its derived subgroup is Alt(6)");
      break;
    default:
      break;
  }
}

constexpr char kChainMagic[8] = {'O', '3', 'C', 'H', 'A', 'I', 'N', '1'};
constexpr uint32_t kChainFormat = 1;

void put_u16(std::string& b, uint16_t v) { b.append(reinterpret_cast<const char*>(&v), 2); }
void put_u32(std::string& b, uint32_t v) { b.append(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::string& b, uint64_t v) { b.append(reinterpret_cast<const char*>(&v), 8); }

uint64_t fnv1a(const std::string& b) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : b) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void put_perm(std::string& b, const Perm& g) {
  for (uint32_t i = 0; i < g.degree(); ++i) put_u16(b, g[i]);
}

class ByteReader {
 public:
  ByteReader(const std::string& buf, const std::string& what) : buf_(buf), what_(what) {}
  void skip(size_t n) { raw(n); }
  uint16_t u16() { return static_cast<uint16_t>(raw(2)); }
  uint32_t u32() { return static_cast<uint32_t>(raw(4)); }
  uint64_t u64() { return raw(8); }
  Perm perm(uint32_t degree) {
    std::vector<uint16_t> img(degree);
    for (uint32_t i = 0; i < degree; ++i) img[i] = u16();
    return Perm::from_images(std::move(img));
  }
  size_t pos() const { return pos_; }

 private:
  uint64_t raw(size_t n) {
    if (pos_ + n > buf_.size())
      throw std::runtime_error("cache integrity error: truncated " + what_);
    uint64_t v = 0;
    std::memcpy(&v, buf_.data() + pos_, n > 8 ? 0 : n);
    pos_ += n;
    return v;
  }
  const std::string& buf_;
  std::string what_;
  size_t pos_ = 0;
};

}  // namespace

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name)
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

std::string cache_group_dir(const RunConfig& cfg, const std::string& canonical) {
  if (cfg.cache_dir.empty()) return "";
  return cfg.cache_dir + "/v1/" + sanitize_name(canonical);
}

bool load_chain_cache(const std::string& dir, const std::vector<Perm>& gens, StabChain& out) {
  const std::string path = dir + "/chain.bin";
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < 8 + 4 + 8 || std::memcmp(buf.data(), kChainMagic, 8) != 0)
    throw std::runtime_error("cache integrity error: bad magic in " + path);
  // Checksum covers everything before the trailing 8 bytes.
  uint64_t stored_sum;
  std::memcpy(&stored_sum, buf.data() + buf.size() - 8, 8);
  if (fnv1a(buf.substr(0, buf.size() - 8)) != stored_sum)
    throw std::runtime_error("cache integrity error: checksum mismatch in " + path);

  try {
    ByteReader r(buf, path);
    r.skip(8);
    if (r.u32() != kChainFormat) return false;  // other format version: recompute
    const uint32_t degree = r.u32();
    const uint32_t ngens = r.u32();
    if (ngens != gens.size()) return false;  // stale cache for a different build
    for (uint32_t i = 0; i < ngens; ++i)
      if (r.perm(degree) != gens[i]) return false;
    const uint32_t nlevels = r.u32();
    std::vector<uint16_t> base(nlevels);
    std::vector<std::vector<Perm>> level_gens(nlevels);
    for (uint32_t l = 0; l < nlevels; ++l) {
      base[l] = r.u16();
      if (base[l] >= degree)
        throw std::runtime_error("cache integrity error: base point out of range in " + path);
      const uint32_t lg = r.u32();
      level_gens[l].reserve(lg);
      for (uint32_t i = 0; i < lg; ++i) level_gens[l].push_back(r.perm(degree));
    }
    const uint64_t stored_order = r.u64();
    if (r.pos() + 8 != buf.size())
      throw std::runtime_error("cache integrity error: trailing bytes in " + path);

    StabChain chain = StabChain::assemble(degree, gens, base, level_gens);
    if (!chain.verify() || chain.order() != stored_order)
      throw std::runtime_error("cache integrity error: stored chain fails verification in " +
                               path);
    out = std::move(chain);
    return true;
  } catch (const std::invalid_argument& e) {
    // Image arrays that fail Perm validation mean the payload is damaged.
    throw std::runtime_error("cache integrity error: " + std::string(e.what()) + " in " + path);
  }
}

void store_chain_cache(const std::string& dir, const std::vector<Perm>& gens,
                       const StabChain& chain) {
  std::string buf;
  buf.append(kChainMagic, 8);
  put_u32(buf, kChainFormat);
  put_u32(buf, chain.degree());
  put_u32(buf, static_cast<uint32_t>(gens.size()));
  for (const Perm& g : gens) put_perm(buf, g);
  const auto base = chain.base_points();
  put_u32(buf, static_cast<uint32_t>(base.size()));
  for (size_t l = 0; l < chain.num_levels(); ++l) {
    put_u16(buf, chain.level(l).base);
    put_u32(buf, static_cast<uint32_t>(chain.level(l).gens.size()));
    for (const Perm& g : chain.level(l).gens) put_perm(buf, g);
  }
  put_u64(buf, chain.order());
  put_u64(buf, fnv1a(buf));

  const std::string tmp = dir + "/chain.bin.tmp";
  {
    std::ofstream outf(tmp, std::ios::binary | std::ios::trunc);
    outf.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!outf) throw std::runtime_error("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, dir + "/chain.bin");
}

CacheLock::CacheLock(const std::string& dir) : path_(dir + "/lock") {
  fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
}

CacheLock::~CacheLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
}

GroupHandle construct_group(const std::string& name, const RunConfig& cfg) {
  GroupHandle h;
  h.meta = parse_group_name(name);

  FamilyBuild fb;
  switch (h.meta.family) {
    case Family::Alt:
      fb.gens = alt_generators(h.meta.n);
      fb.expected = h.meta.n <= 2 ? 1 : factorial_checked(h.meta.n) / 2;
      break;
    case Family::Sym:
      fb.gens = sym_generators(h.meta.n);
      fb.expected = factorial_checked(h.meta.n);
      break;
    case Family::FrobA4:
      fb = build_frob_a4();
      break;
    case Family::Wreath:
      fb = build_wreath();
      break;
    case Family::Bundle:
      fb = build_bundle(h.meta.path);
      break;
    default:
      fb = build_matrix_family(h.meta);
      break;
  }

  const uint32_t degree = h.meta.family == Family::Alt || h.meta.family == Family::Sym
                              ? std::max(h.meta.n, 1u)
                              : fb.gens.empty() ? 1
                                                : fb.gens[0].degree();
  h.gens = std::move(fb.gens);
  h.lift = std::move(fb.lift);

  // Chain: cached when a cache directory is configured, rebuilt otherwise.
  const std::string dir = cache_group_dir(cfg, h.meta.canonical);
  bool loaded = false;
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    StabChain cached;
    if (load_chain_cache(dir, h.gens, cached)) {
      h.chain = std::move(cached);
      loaded = true;
    }
  }
  if (!loaded) {
    h.chain = StabChain::build(degree, h.gens);
    if (!dir.empty()) {
      CacheLock lock(dir);
      if (lock.acquired())
        store_chain_cache(dir, h.gens, h.chain);
      else
        std::cerr << "note: cache directory busy, skipping cache write for "
                  << h.meta.canonical << "\n";
    }
  }

  h.order = h.chain.order();
  if (fb.expected && h.order != fb.expected) {
    if (h.meta.family == Family::Bundle)
      throw std::runtime_error("bundle order mismatch for " + h.meta.canonical + ": stated " +
                               std::to_string(fb.expected) + ", computed " +
                               std::to_string(h.order));
    throw std::logic_error("order mismatch for " + h.meta.canonical + ": formula " +
                           std::to_string(fb.expected) + ", chain " + std::to_string(h.order));
  }

  if (!fb.socle_gens.empty())
    h.socle = std::make_unique<StabChain>(StabChain::build(degree, fb.socle_gens));

  apply_exclusions(h);
  return h;
}

}  // namespace o3
