// Copyright 2026 The Polent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "polent/angmom.hpp"
#include "polent/config_io.hpp"
#include "polent/design_symmetric.hpp"
#include "polent/dicke.hpp"
#include "polent/emission.hpp"
#include "polent/errors.hpp"
#include "polent/qstate.hpp"
#include "polent/random.hpp"
#include "polent/setup.hpp"
