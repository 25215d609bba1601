// Copyright 2026 The qfock Authors
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

#ifndef QFOCK_RUNNER_HPP_
#define QFOCK_RUNNER_HPP_

#include "qfock/config.hpp"
#include "qfock/report.hpp"

namespace qfock {

/// Dispatches a validated config to its command and assembles the report.
/// UsageError propagates; size and truncation violations inside the command
/// surface as failed checks.
Report run(const RunConfig& config);

}  // namespace qfock

#endif  // QFOCK_RUNNER_HPP_
