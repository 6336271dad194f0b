// Copyright 2026 The superrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "superrep/schur.hpp"

namespace superrep {

namespace {

constexpr char kMagic[4] = {'S', 'R', 'S', 'B'};

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("load_schur_basis: truncated file");
  return v;
}

}  // namespace

void save_schur_basis(const SchurBasis& basis, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_schur_basis: cannot open " + tmp.string());
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kSchurConventionVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(basis.d()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(basis.K()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(basis.blocks().size()));
    for (const auto& b : basis.blocks()) {
      for (int r : b.diagram.rows()) put<std::uint32_t>(out, static_cast<std::uint32_t>(r));
      put<std::uint64_t>(out, b.dim_rep);
      put<std::uint64_t>(out, b.mult);
      put<std::uint64_t>(out, b.offset);
    }
    put<std::uint64_t>(out, basis.dim());
    const CMatrix& m = basis.matrix();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        put<double>(out, m(r, c).real());
        put<double>(out, m(r, c).imag());
      }
    if (!out) throw std::runtime_error("save_schur_basis: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SchurBasis load_schur_basis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_schur_basis: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("load_schur_basis: bad magic in " + path.string());
  auto version = get<std::uint32_t>(in);
  if (version != kSchurConventionVersion)
    throw std::runtime_error("load_schur_basis: convention version " + std::to_string(version) + " is not supported");
  auto d = static_cast<int>(get<std::uint32_t>(in));
  auto K = static_cast<int>(get<std::uint32_t>(in));
  auto nblocks = get<std::uint32_t>(in);
  std::vector<SchurBlock> blocks;
  for (std::uint32_t i = 0; i < nblocks; ++i) {
    std::vector<int> rows(static_cast<std::size_t>(d));
    for (auto& r : rows) r = static_cast<int>(get<std::uint32_t>(in));
    SchurBlock b{YoungDiagram(std::move(rows)), 0, 0, 0};
    b.dim_rep = get<std::uint64_t>(in);
    b.mult = get<std::uint64_t>(in);
    b.offset = get<std::uint64_t>(in);
    blocks.push_back(std::move(b));
  }
  auto dim = static_cast<Eigen::Index>(get<std::uint64_t>(in));
  if (static_cast<std::size_t>(dim) != checked_pow(static_cast<std::size_t>(d), static_cast<std::size_t>(K)))
    throw std::runtime_error("load_schur_basis: dimension does not match d^K");
  CMatrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) {
      double re = get<double>(in);
      double im = get<double>(in);
      m(r, c) = cplx(re, im);
    }
  return SchurBasis(K, d, std::move(m), std::move(blocks));
}

std::filesystem::path schur_cache_file(const std::filesystem::path& dir, int K, int d) {
  return dir / ("schur_d" + std::to_string(d) + "_K" + std::to_string(K) + "_v" +
                std::to_string(kSchurConventionVersion) + ".bin");
}

}  // namespace superrep
