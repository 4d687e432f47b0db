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

#include "wiretap/error.hpp"

namespace wiretap {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonPositiveNoise: return "NonPositiveNoise";
        case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorKind::InvalidCovariance: return "InvalidCovariance";
        case ErrorKind::InvalidSnr: return "InvalidSnr";
        case ErrorKind::EigenFailure: return "EigenFailure";
        case ErrorKind::NotSecure: return "NotSecure";
        case ErrorKind::BadSimplexWeights: return "BadSimplexWeights";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::AsymmetricInput: return "AsymmetricInput";
        case ErrorKind::NonPositiveSnr: return "NonPositiveSnr";
        case ErrorKind::BadSampleGrid: return "BadSampleGrid";
        case ErrorKind::BadGrid: return "BadGrid";
        case ErrorKind::InvalidEnsemble: return "InvalidEnsemble";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, std::string_view module, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      module_(module),
      detail_(detail) {}

}  // namespace wiretap
