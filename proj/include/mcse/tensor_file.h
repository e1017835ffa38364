// mcse/tensor_file.h

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

#ifndef MCSE_TENSOR_FILE_H_
#define MCSE_TENSOR_FILE_H_

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mcse {

// MCTF: a minimal binary tensor container. Layout, all little-endian:
//   bytes 0-3   magic "MCTF"
//   bytes 4-5   version (u16) = 1
//   byte  6     dtype (u8): 0 = f32, 1 = f64, 2 = c64, 3 = c128
//   byte  7     ndim (u8)
//   then ndim   u64 dimensions
//   then        payload, row-major, dims product * dtype size bytes
// Complex payloads are (real, imag) pairs of f32 (c64) or f64 (c128).

enum class TensorDtype : uint8_t { kF32 = 0, kF64 = 1, kC64 = 2, kC128 = 3 };

struct Tensor {
  std::vector<uint64_t> dims;
  std::variant<std::vector<float>, std::vector<double>,
               std::vector<std::complex<float>>,
               std::vector<std::complex<double>>>
      values;

  TensorDtype dtype() const {
    return static_cast<TensorDtype>(values.index());
  }
  uint64_t element_count() const;
};

// Throws DataError on bad magic/version/dtype or a payload whose size
// disagrees with the dimensions.
Tensor read_tensor(const std::string& path);

// Atomic (temp + rename); round-trips losslessly for every dtype.
void write_tensor(const std::string& path, const Tensor& tensor);

}  // namespace mcse

#endif  // MCSE_TENSOR_FILE_H_
