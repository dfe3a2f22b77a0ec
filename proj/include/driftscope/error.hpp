/*
 * Copyright 2026 The Driftscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DRIFTSCOPE_ERROR_HPP
#define DRIFTSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace driftscope {

enum class ErrorCode {
    // ingest
    MissingColumn,
    NonPositiveValue,
    UnknownMode,
    UnknownRating,
    RowCountMismatch,
    BadDate,
    ConfigMismatch,
    BadYear,
    // kernel
    NonPositiveBandwidth,
    EmptyTrainingSet,
    BadKappa,
    // stats
    SampleTooSmall,
    SampleTooLarge,
    ZeroVariance,
    LengthMismatch,
    ConstantMeasured,
    // regression
    UnknownLevel,
    UnseenLevel,
    NotWellFormed,
    RankDeficient,
    // chronology
    InsufficientData,
    MissingStartDate,
    // sweep
    UndefinedPoint,
    TooManyUndefined,
    // synth
    BadSpec,
    // report
    EmptySelection,
    // generic
    IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace driftscope

#endif
