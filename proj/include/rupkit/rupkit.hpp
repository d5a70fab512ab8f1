// Copyright 2026 The rupkit Authors
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
//
// Umbrella header.

#pragma once

#include "rupkit/align.hpp"        // IWYU pragma: export
#include "rupkit/corpus.hpp"       // IWYU pragma: export
#include "rupkit/embeddings.hpp"   // IWYU pragma: export
#include "rupkit/errors.hpp"       // IWYU pragma: export
#include "rupkit/metrics.hpp"      // IWYU pragma: export
#include "rupkit/orthography.hpp"  // IWYU pragma: export
#include "rupkit/stats.hpp"        // IWYU pragma: export
#include "rupkit/version.hpp"      // IWYU pragma: export
