// mcse/tensor_file.cc

// Copyright 2026  The mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mcse/tensor_file.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "mcse/error.h"

namespace mcse {

namespace {

constexpr char kMagic[4] = {'M', 'C', 'T', 'F'};
constexpr uint16_t kVersion = 1;

template <typename T>
void read_values(std::istream& in, uint64_t count, std::vector<T>* out) {
  out->resize(count);
  in.read(reinterpret_cast<char*>(out->data()), count * sizeof(T));
  if (static_cast<uint64_t>(in.gcount()) != count * sizeof(T))
    throw DataError("mctf: truncated payload");
}

}  // namespace

uint64_t Tensor::element_count() const {
  uint64_t n = 1;
  for (uint64_t d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

Tensor read_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("mctf: cannot open '" + path + "'");

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("mctf: bad magic in '" + path + "'");
  uint16_t version;
  in.read(reinterpret_cast<char*>(&version), 2);
  if (!in || version != kVersion)
    throw DataError("mctf: unsupported version " + std::to_string(version));
  uint8_t dtype_raw, ndim;
  in.read(reinterpret_cast<char*>(&dtype_raw), 1);
  in.read(reinterpret_cast<char*>(&ndim), 1);
  if (!in || dtype_raw > 3) throw DataError("mctf: bad dtype");

  Tensor t;
  t.dims.resize(ndim);
  in.read(reinterpret_cast<char*>(t.dims.data()), 8 * ndim);
  if (!in) throw DataError("mctf: truncated header");

  const uint64_t count = t.element_count();
  switch (static_cast<TensorDtype>(dtype_raw)) {
    case TensorDtype::kF32: {
      std::vector<float> v;
      read_values(in, count, &v);
      t.values = std::move(v);
      break;
    }
    case TensorDtype::kF64: {
      std::vector<double> v;
      read_values(in, count, &v);
      t.values = std::move(v);
      break;
    }
    case TensorDtype::kC64: {
      std::vector<std::complex<float>> v;
      read_values(in, count, &v);
      t.values = std::move(v);
      break;
    }
    case TensorDtype::kC128: {
      std::vector<std::complex<double>> v;
      read_values(in, count, &v);
      t.values = std::move(v);
      break;
    }
  }
  return t;
}

void write_tensor(const std::string& path, const Tensor& tensor) {
  if (tensor.dims.empty()) throw DataError("mctf: tensor needs at least one dim");
  const uint64_t count = tensor.element_count();
  const uint64_t stored = std::visit(
      [](const auto& v) { return static_cast<uint64_t>(v.size()); },
      tensor.values);
  if (count != stored)
    throw DataError("mctf: dims disagree with the payload size");

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("mctf: cannot write '" + tmp + "'");
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), 2);
    const uint8_t dtype_raw = static_cast<uint8_t>(tensor.dtype());
    const uint8_t ndim = static_cast<uint8_t>(tensor.dims.size());
    out.write(reinterpret_cast<const char*>(&dtype_raw), 1);
    out.write(reinterpret_cast<const char*>(&ndim), 1);
    out.write(reinterpret_cast<const char*>(tensor.dims.data()),
              8 * tensor.dims.size());
    std::visit(
        [&](const auto& v) {
          using T = typename std::decay_t<decltype(v)>::value_type;
          out.write(reinterpret_cast<const char*>(v.data()),
                    v.size() * sizeof(T));
        },
        tensor.values);
    if (!out) throw DataError("mctf: short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mcse
