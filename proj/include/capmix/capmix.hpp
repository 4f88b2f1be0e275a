// Copyright 2026 The capmix Authors
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

#ifndef CAPMIX_CAPMIX_HPP
#define CAPMIX_CAPMIX_HPP

#include "capmix/error.hpp"
#include "capmix/geometry.hpp"
#include "capmix/milp_export.hpp"
#include "capmix/mixing.hpp"
#include "capmix/properties.hpp"
#include "capmix/scenario.hpp"
#include "capmix/svg_plot.hpp"

#endif  // CAPMIX_CAPMIX_HPP
