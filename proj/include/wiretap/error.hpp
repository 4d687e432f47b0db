// Copyright 2026 The wiretap-lowsnr Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wiretap {

enum class ErrorKind {
    DimensionMismatch,
    NonPositiveNoise,
    NonFiniteEntry,
    InvalidCovariance,
    InvalidSnr,
    EigenFailure,
    NotSecure,
    BadSimplexWeights,
    BadDimension,
    AsymmetricInput,
    NonPositiveSnr,
    BadSampleGrid,
    BadGrid,
    InvalidEnsemble,
    DegenerateDenominator,
    ParseError,
    IoError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. Carries the error kind and the
/// module that raised it so that the CLI can report provenance.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string_view module, const std::string& detail);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& module() const noexcept { return module_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string module_;
    std::string detail_;
};

}  // namespace wiretap
