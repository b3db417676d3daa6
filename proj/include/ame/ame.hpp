// Copyright 2026 The ame-toolkit Authors
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

#include "ame/census.hpp"
#include "ame/factor6.hpp"
#include "ame/factor8.hpp"
#include "ame/gf.hpp"
#include "ame/graphstate.hpp"
#include "ame/io.hpp"
#include "ame/matrix.hpp"
#include "ame/oa.hpp"
#include "ame/records.hpp"
