// Copyright 2026 The qdist developers
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

#include "qdist/channels.hpp"
#include "qdist/distances.hpp"
#include "qdist/entropy.hpp"
#include "qdist/errors.hpp"
#include "qdist/linalg.hpp"
#include "qdist/purification.hpp"
#include "qdist/state_io.hpp"
#include "qdist/states.hpp"
#include "qdist/sweep.hpp"
#include "qdist/verify.hpp"
