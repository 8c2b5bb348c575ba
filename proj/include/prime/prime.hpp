/* Copyright 2026 The prime-aug Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include "prime/analysis/embedding_io.hpp"
#include "prime/analysis/fitness.hpp"
#include "prime/augment/additive.hpp"
#include "prime/augment/augment.hpp"
#include "prime/augment/config.hpp"
#include "prime/augment/recipe.hpp"
#include "prime/augment/serialization.hpp"
#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/core/strength.hpp"
#include "prime/pipeline/bench.hpp"
#include "prime/pipeline/checksum.hpp"
#include "prime/pipeline/dataset.hpp"
#include "prime/pipeline/image_io.hpp"
#include "prime/pipeline/parallel.hpp"
#include "prime/pipeline/preview.hpp"
#include "prime/pipeline/validate.hpp"
#include "prime/transforms/color.hpp"
#include "prime/transforms/spatial.hpp"
#include "prime/transforms/spectral.hpp"
