// Copyright (c) 2026 The perfseg Authors
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

#ifndef PERFSEG__ERRORS_HPP_
#define PERFSEG__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace perfseg
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define PERFSEG_DEFINE_ERROR(Name) \
  class Name : public Error \
  { \
public: \
    using Error::Error; \
  }

PERFSEG_DEFINE_ERROR(InvalidArgument);
PERFSEG_DEFINE_ERROR(DimensionMismatch);

// io
PERFSEG_DEFINE_ERROR(IoError);
PERFSEG_DEFINE_ERROR(ImageDecodeError);
PERFSEG_DEFINE_ERROR(ManifestParseError);
PERFSEG_DEFINE_ERROR(InconsistentStudy);

// projection
PERFSEG_DEFINE_ERROR(ProfileTooShort);
PERFSEG_DEFINE_ERROR(DegenerateBrainBox);

// thresholding / morphology
PERFSEG_DEFINE_ERROR(EmptyRegion);
PERFSEG_DEFINE_ERROR(EmptyForeground);

// pipeline
PERFSEG_DEFINE_ERROR(SegmentationFailed);
PERFSEG_DEFINE_ERROR(RefTimepointOutOfRange);

// metrics
PERFSEG_DEFINE_ERROR(BothEmpty);
PERFSEG_DEFINE_ERROR(UndefinedFraction);
PERFSEG_DEFINE_ERROR(EmptyInput);

// phantom
PERFSEG_DEFINE_ERROR(InvalidSpec);

#undef PERFSEG_DEFINE_ERROR

}  // namespace perfseg

#endif  // PERFSEG__ERRORS_HPP_
