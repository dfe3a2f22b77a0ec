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

#include "driftscope/error.hpp"

namespace driftscope {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::UnknownMode: return "UnknownMode";
        case ErrorCode::UnknownRating: return "UnknownRating";
        case ErrorCode::RowCountMismatch: return "RowCountMismatch";
        case ErrorCode::BadDate: return "BadDate";
        case ErrorCode::ConfigMismatch: return "ConfigMismatch";
        case ErrorCode::BadYear: return "BadYear";
        case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
        case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorCode::BadKappa: return "BadKappa";
        case ErrorCode::SampleTooSmall: return "SampleTooSmall";
        case ErrorCode::SampleTooLarge: return "SampleTooLarge";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ConstantMeasured: return "ConstantMeasured";
        case ErrorCode::UnknownLevel: return "UnknownLevel";
        case ErrorCode::UnseenLevel: return "UnseenLevel";
        case ErrorCode::NotWellFormed: return "NotWellFormed";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::MissingStartDate: return "MissingStartDate";
        case ErrorCode::UndefinedPoint: return "UndefinedPoint";
        case ErrorCode::TooManyUndefined: return "TooManyUndefined";
        case ErrorCode::BadSpec: return "BadSpec";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace driftscope
