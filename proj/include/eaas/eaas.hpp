// Copyright 2026 The EaaS Reliability Authors
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

#ifndef EAAS_EAAS_HPP_
#define EAAS_EAAS_HPP_

#include "eaas/bench.hpp"
#include "eaas/checker.hpp"
#include "eaas/commands.hpp"
#include "eaas/composer.hpp"
#include "eaas/model.hpp"
#include "eaas/reliability.hpp"
#include "eaas/scenario.hpp"
#include "eaas/selection.hpp"
#include "eaas/workload.hpp"

#endif  // EAAS_EAAS_HPP_
