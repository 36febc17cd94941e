// Copyright 2026 The ASC Codec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

// Umbrella header for the adaptive-scale feature-map codec.

#pragma once

#include "asc/bitstream.hpp"   // IWYU pragma: export
#include "asc/codec.hpp"       // IWYU pragma: export
#include "asc/error.hpp"       // IWYU pragma: export
#include "asc/fmap_io.hpp"     // IWYU pragma: export
#include "asc/format.hpp"      // IWYU pragma: export
#include "asc/half.hpp"        // IWYU pragma: export
#include "asc/hw_model.hpp"    // IWYU pragma: export
#include "asc/metrics.hpp"     // IWYU pragma: export
#include "asc/parallel.hpp"    // IWYU pragma: export
#include "asc/reorder.hpp"     // IWYU pragma: export
#include "asc/scales.hpp"      // IWYU pragma: export
#include "asc/tensor.hpp"      // IWYU pragma: export
#include "asc/zvc.hpp"         // IWYU pragma: export
